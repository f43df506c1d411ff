// Command-line entry point: build domain specs, compute certified measures,
// run the Cheeger solver, run the verification suites, and render figures.
//
// Exit codes: 0 success, 2 usage / invalid input, 3 constraint violation,
// 4 certification failure (including degenerate thresholds), 5 verification
// violation.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cheegerlab/cantor.hpp"
#include "cheegerlab/domain.hpp"
#include "cheegerlab/errors.hpp"
#include "cheegerlab/json_io.hpp"
#include "cheegerlab/porous.hpp"
#include "cheegerlab/raster.hpp"
#include "cheegerlab/solver.hpp"
#include "cheegerlab/svg.hpp"
#include "cheegerlab/verify.hpp"

namespace {

using namespace cheegerlab;

struct VerificationViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_interval_row(const char* label, const IntervalValue& v) {
  std::printf("  %-18s [%.12g, %.12g]  width %.3g\n", label, v.lo, v.hi,
              v.width());
}

void print_check_line(const CheckReport& r) {
  std::printf("  %-22s trials %-8ld violations %-4ld worst_margin %.6g  %s\n",
              r.name.c_str(), r.trials, r.violations,
              r.worst_margin, r.passed() ? "ok" : "VIOLATED");
}

SequenceParams default_seq_checked(double eps1, double safety) {
  if (!(eps1 > 0.0) || !(eps1 < 0.25)) {
    throw ConstraintViolationError(
        "condition (ii): the first ring distance eps1 must lie in (0, 1/4)");
  }
  return default_sequences(eps1, safety);
}

int run_build_cantor(double eps, int depth, const std::string& out) {
  const DomainSpec spec = build_omega_eps(eps, depth);
  save_domain(spec, out);
  std::printf("slit domain written to %s\n", out.c_str());
  std::printf("  epsilon            %.12g\n", spec.cantor.epsilon);
  std::printf("  depth              %d\n", spec.cantor.depth);
  std::printf("  segments           %zu\n", spec.cantor.segments.size());
  std::printf("  bumps              %zu\n", spec.cantor.gaps.size());
  for (const auto& w : spec.cantor.warnings) {
    std::printf("  warning: %s\n", w.c_str());
  }
  return 0;
}

int run_build_porous(double eps1, double safety, int depth,
                     std::vector<int> start, const std::string& out) {
  const SequenceParams seq = default_seq_checked(eps1, safety);
  IndexPair start_pair{1, 1};
  if (!start.empty()) {
    if (start.size() != 2) {
      throw InvalidInputError("--start expects two integers j1 j2");
    }
    start_pair = IndexPair{start[0], start[1]};
  }
  const ValidationReport report = validate_constraints(seq, depth);
  std::printf("constraint validation (j1 <= %d):\n", depth);
  for (const auto& c : report.conditions) {
    std::printf("  %-18s %-6s margin %.6g  %s\n", c.label.c_str(),
                c.passed ? "pass" : "FAIL", c.margin, c.detail.c_str());
  }
  const DomainSpec spec = build_omega0(seq, depth, start_pair);
  save_domain(spec, out);
  std::printf("porous domain written to %s\n", out.c_str());
  std::printf("  holes              %zu\n", spec.holes.size());
  std::printf("  truncation depth   %d\n", depth);
  return 0;
}

int run_measure(const std::string& spec_path, const std::string& out) {
  const DomainSpec spec = load_domain(spec_path);
  json j;
  switch (spec.kind) {
    case ObstacleKind::cantor_bumps: {
      const OmegaEpsMeasures m = omega_eps_measures(spec);
      std::printf("slit domain measures (intervals enclose the full "
                  "construction):\n");
      print_interval_row("perimeter", m.perimeter);
      print_interval_row("area", m.area);
      print_interval_row("boundary_h1", m.topo_boundary_h1);
      print_interval_row("cantor_gap", m.cantor_gap);
      std::printf("  strict P < H1      %s\n",
                  strictly_below(m.perimeter, m.topo_boundary_h1)
                      ? "certified"
                      : "NOT certified");
      j = report_to_json(m);
      break;
    }
    case ObstacleKind::holes: {
      if (!spec.porous_meta.has_value()) {
        double sum_r = 0;
        double sum_r2 = 0;
        for (const auto& h : spec.holes) {
          sum_r += h.radius;
          sum_r2 += h.radius * h.radius;
        }
        const double per = kTwoPi * (spec.outer.radius + sum_r);
        const double area =
            kPi * (spec.outer.radius * spec.outer.radius - sum_r2);
        std::printf("hole-list domain measures (exact truncated sums):\n");
        std::printf("  %-18s %.12g\n", "perimeter", per);
        std::printf("  %-18s %.12g\n", "area", area);
        j = json{{"perimeter", per}, {"area", area}};
        break;
      }
      const PorousMeta& meta = *spec.porous_meta;
      const SequenceParams seq = default_seq_checked(meta.eps1, meta.safety);
      const PorousReport m = porous_measures(spec, seq, meta.depth);
      std::printf("porous domain measures (intervals enclose the full "
                  "construction):\n");
      print_interval_row("perimeter", m.perimeter);
      print_interval_row("area", m.area);
      std::printf("  %-18s %.12g\n", "delta", m.delta);
      std::printf("  %-18s %s\n", "delta < 2^-7",
                  m.delta_bound_ok ? "yes" : "NO");
      std::printf("  %-18s %.12g\n", "h_upper", m.h_upper);
      j = report_to_json(m);
      break;
    }
    case ObstacleKind::none: {
      const DiskMeasures m = disk_measures(spec.outer);
      std::printf("disk measures:\n");
      std::printf("  %-18s %.12g\n", "perimeter", m.perimeter);
      std::printf("  %-18s %.12g\n", "area", m.area);
      j = json{{"perimeter", m.perimeter}, {"area", m.area}};
      break;
    }
  }
  if (!out.empty()) write_json_file(j, out);
  return 0;
}

int run_solve(const std::string& spec_path, int n, CheegerConfig cfg,
              const std::string& threshold_mode, const std::string& out,
              const std::string& pgm_out, const std::string& svg_out) {
  if (threshold_mode == "fixed") {
    cfg.threshold_mode = ThresholdMode::fixed;
  } else if (threshold_mode == "scan") {
    cfg.threshold_mode = ThresholdMode::scan;
  } else {
    throw InvalidInputError("--threshold-mode must be fixed or scan");
  }
  const DomainSpec spec = load_domain(spec_path);
  const RasterField field = rasterize(spec, n);
  if (field.excluded.count > 0) {
    std::printf("note: %d holes below half a pixel were excluded from the "
                "raster (certified statements apply to the truncation)\n",
                field.excluded.count);
  }
  const CheegerResult result = solve_cheeger(field, cfg);
  const double gap = minimality_gap(result, spec);
  std::printf("solver result on %dx%d grid:\n", field.nx, field.ny);
  std::printf("  %-18s %.8g\n", "h_estimate", result.h_estimate);
  std::printf("  %-18s %.8g\n", "ratio", result.ratio);
  std::printf("  %-18s %.4g\n", "threshold", result.threshold_used);
  std::printf("  %-18s %s\n", "converged", result.converged ? "yes" : "no");
  std::printf("  %-18s %zu\n", "outer_steps", result.history.size());
  std::printf("  %-18s %.6g\n", "minimality_gap", gap);
  if (!out.empty()) {
    json j = report_to_json(result);
    j["minimality_gap"] = gap;
    write_json_file(j, out);
  }
  if (!pgm_out.empty()) write_pgm(result.indicator, pgm_out);
  if (!svg_out.empty()) {
    RenderOptions opt;
    opt.center = spec.outer.center;
    opt.half = 1.15 * spec.outer.radius;
    write_text_file(svg_out, render_overlay_svg(spec, result.indicator,
                                                result.threshold_used, opt));
  }
  return 0;
}

int run_verify(const std::vector<std::string>& suites_in, bool all,
               long trials_lemma21, long trials_angles, int j1_max,
               std::uint64_t seed, const std::string& out) {
  std::vector<std::string> suites = suites_in;
  if (all || suites.empty()) {
    suites = {"constraints", "lemma21", "angles", "competitor",
              "density",     "ph",      "gridcheck"};
  }
  json all_reports = json::array();
  bool violated = false;
  const SequenceParams seq = default_sequences(0.2, 1.0);

  for (const auto& suite : suites) {
    if (suite == "constraints") {
      const ValidationReport rep = validate_constraints(seq, j1_max);
      std::printf("constraints (defaults, j1 <= %d): %s\n", j1_max,
                  rep.all_passed() ? "all pass" : "FAILED");
      for (const auto& c : rep.conditions) {
        std::printf("  %-18s %-6s margin %.6g\n", c.label.c_str(),
                    c.passed ? "pass" : "FAIL", c.margin);
      }
      const DomainSpec spec = build_omega0(seq, std::min(j1_max, 8));
      const PorousReport pm =
          porous_measures(spec, seq, std::min(j1_max, 8));
      std::printf("  %-18s %.6g (%s)\n", "delta", pm.delta,
                  pm.delta_bound_ok ? "below 2^-7" : "NOT below 2^-7");
      violated = violated || !rep.all_passed() || !pm.delta_bound_ok;
      json jr = report_to_json(rep);
      jr["delta"] = pm.delta;
      jr["delta_bound_ok"] = pm.delta_bound_ok;
      all_reports.push_back(jr);
    } else if (suite == "lemma21") {
      const CheckReport rep = check_arc_min_lemma(trials_lemma21, seed);
      print_check_line(rep);
      violated = violated || !rep.passed();
      all_reports.push_back(report_to_json(rep));
    } else if (suite == "angles") {
      const CheckReport rep = run_angle_suite(trials_angles, seed);
      print_check_line(rep);
      violated = violated || !rep.passed();
      all_reports.push_back(report_to_json(rep));
    } else if (suite == "competitor") {
      const CheckReport rep = run_competitor_sweep(seq, j1_max);
      print_check_line(rep);
      violated = violated || !rep.passed();
      all_reports.push_back(report_to_json(rep));
    } else if (suite == "density") {
      const DomainSpec spec = build_omega0(seq, 12);
      const DensitySweepReport rep = run_boundary_density_sweep(spec);
      std::printf("  %-22s c_fit %-10.6g monotone %-5s %s\n",
                  "boundary_density", rep.c_fit,
                  rep.monotone ? "yes" : "no",
                  rep.passed() ? "ok" : "VIOLATED");
      violated = violated || !rep.passed();
      json jr = report_to_json(rep);
      jr["name"] = "boundary_density";
      all_reports.push_back(jr);
    } else if (suite == "ph") {
      const DomainSpec slit = build_omega_eps(1.0 / 25.0, 20);
      const PhReport a = check_ph_property(slit);
      const DomainSpec porous = build_omega0(seq, 8);
      const PhReport b = check_ph_property(porous);
      DomainSpec disk;
      const PhReport c = check_ph_property(disk);
      const bool ok = a.strict_inequality && b.equality && c.equality;
      std::printf("  %-22s slit strict %-5s porous equal %-5s disk equal "
                  "%-5s %s\n",
                  "ph_property", a.strict_inequality ? "yes" : "no",
                  b.equality ? "yes" : "no", c.equality ? "yes" : "no",
                  ok ? "ok" : "VIOLATED");
      violated = violated || !ok;
      json jr;
      jr["name"] = "ph_property";
      jr["slit"] = report_to_json(a);
      jr["porous"] = report_to_json(b);
      jr["disk"] = report_to_json(c);
      all_reports.push_back(jr);
    } else if (suite == "gridcheck") {
      const DomainSpec spec = build_omega0(seq, 3);
      const RasterField field = rasterize(spec, 256);
      CheegerConfig cfg;
      const CheegerResult result = solve_cheeger(field, cfg);
      const CheckReport dens =
          check_density_estimate(result, spec, 200, seed);
      const bool half_disk = check_half_disk_inclusion(result);
      print_check_line(dens);
      std::printf("  %-22s %s\n", "half_disk_inclusion",
                  half_disk ? "ok" : "VIOLATED");
      violated = violated || !dens.passed() || !half_disk;
      json jr = report_to_json(dens);
      jr["half_disk_inclusion"] = half_disk;
      all_reports.push_back(jr);
    } else {
      throw InvalidInputError("unknown verification suite: " + suite);
    }
  }
  if (!out.empty()) write_json_file(all_reports, out);
  if (violated) {
    throw VerificationViolation("verification suite reported violations");
  }
  std::printf("all requested verifications passed\n");
  return 0;
}

int run_render(const std::string& spec_path, const std::string& out,
               double cx, double cy, double half, int size,
               const std::string& overlay_pgm, double threshold) {
  const DomainSpec spec = load_domain(spec_path);
  RenderOptions opt;
  opt.center = Point2{cx, cy};
  opt.half = half;
  opt.size = size;
  const double center_dist = distance(opt.center, spec.outer.center);
  if (center_dist - opt.half > spec.outer.radius) {
    std::fprintf(stderr,
                 "warning: zoom window lies outside the domain; output "
                 "will be clipped/empty\n");
  }
  std::string svg;
  if (!overlay_pgm.empty()) {
    const RasterField field = read_pgm(overlay_pgm);
    svg = render_overlay_svg(spec, field, threshold, opt);
  } else {
    svg = render_domain_svg(spec, opt);
  }
  write_text_file(out, svg);
  std::printf("figure written to %s\n", out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal-Cheeger counterexample domains: construction, "
               "certified measures, ratio solver, verification"};
  app.set_config("--config", "", "Read options from an INI file");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  std::uint64_t seed = 7;
  app.add_option("--seed", seed, "Random seed for sampled suites")
      ->capture_default_str();

  int rc = 0;

  // build ------------------------------------------------------------------
  auto* build = app.add_subcommand("build", "Construct a domain spec JSON");
  build->require_subcommand(1);

  auto* build_cantor =
      build->add_subcommand("cantor", "Unit disk minus a fat slit with bumps");
  double bc_eps = 0.04;
  int bc_depth = 12;
  std::string bc_out = "cantor_domain.json";
  build_cantor->add_option("--eps", bc_eps, "Slit half-width epsilon")
      ->capture_default_str();
  build_cantor->add_option("--depth", bc_depth, "Construction depth N")
      ->capture_default_str();
  build_cantor->add_option("--out", bc_out, "Output JSON path")
      ->capture_default_str();
  build_cantor->callback(
      [&] { rc = run_build_cantor(bc_eps, bc_depth, bc_out); });

  auto* build_porous =
      build->add_subcommand("porous", "Unit disk minus rim-accumulating holes");
  double bp_eps1 = 0.2;
  double bp_safety = 1.0;
  int bp_depth = 8;
  std::vector<int> bp_start;
  std::string bp_out = "porous_domain.json";
  build_porous->add_option("--eps1", bp_eps1, "First ring distance")
      ->capture_default_str();
  build_porous->add_option("--safety", bp_safety, "Radius scale in (0,1]")
      ->capture_default_str();
  build_porous->add_option("--depth", bp_depth, "Truncation depth (max j1)")
      ->capture_default_str();
  build_porous->add_option("--start", bp_start,
                           "Start index j1 j2 (holes before it are filled)")
      ->expected(2);
  build_porous->add_option("--out", bp_out, "Output JSON path")
      ->capture_default_str();
  build_porous->callback([&] {
    rc = run_build_porous(bp_eps1, bp_safety, bp_depth, bp_start, bp_out);
  });

  // measure ----------------------------------------------------------------
  auto* measure =
      app.add_subcommand("measure", "Certified measures of a spec");
  std::string m_spec;
  std::string m_out;
  measure->add_option("--spec", m_spec, "Domain spec JSON")
      ->required()
      ->check(CLI::ExistingFile);
  measure->add_option("--out", m_out, "Write measures JSON here");
  measure->callback([&] { rc = run_measure(m_spec, m_out); });

  // solve ------------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Cheeger ratio minimization");
  std::string s_spec;
  int s_n = 1024;
  CheegerConfig s_cfg;
  std::string s_threshold_mode = "scan";
  std::string s_out;
  std::string s_pgm;
  std::string s_svg;
  solve->add_option("--spec", s_spec, "Domain spec JSON")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--n", s_n, "Grid resolution")->capture_default_str();
  solve->add_option("--outer-tol", s_cfg.outer_tol, "Outer stop tolerance")
      ->capture_default_str();
  solve->add_option("--max-outer", s_cfg.max_outer, "Outer iteration cap")
      ->capture_default_str();
  solve->add_option("--inner-iters", s_cfg.inner_iters,
                    "Base inner iteration budget")
      ->capture_default_str();
  solve->add_option("--inner-tol", s_cfg.inner_tol,
                    "Relative primal-dual gap target")
      ->capture_default_str();
  solve->add_option("--threshold-mode", s_threshold_mode, "fixed or scan")
      ->capture_default_str();
  solve->add_option("--threshold-level", s_cfg.threshold_level,
                    "Level for fixed thresholding")
      ->capture_default_str();
  solve->add_option("--threshold-levels", s_cfg.threshold_levels,
                    "Number of scan levels")
      ->capture_default_str();
  solve->add_option("--out", s_out, "Write result JSON here");
  solve->add_option("--pgm", s_pgm, "Write indicator PGM here");
  solve->add_option("--svg", s_svg, "Write contour overlay SVG here");
  solve->callback([&] {
    rc = run_solve(s_spec, s_n, s_cfg, s_threshold_mode, s_out, s_pgm, s_svg);
  });

  // verify -----------------------------------------------------------------
  auto* verify =
      app.add_subcommand("verify", "Property suites for the lemma chains");
  std::vector<std::string> v_suites;
  bool v_all = false;
  long v_trials_lemma21 = 10000;
  long v_trials_angles = 1000;
  int v_j1max = 12;
  std::string v_out;
  verify->add_option("suites", v_suites,
                     "Suites: constraints lemma21 angles competitor density "
                     "ph gridcheck");
  verify->add_flag("--all", v_all, "Run every suite");
  verify->add_option("--trials", v_trials_lemma21,
                     "Trials for the arc-minimum suite")
      ->capture_default_str();
  verify->add_option("--angle-trials", v_trials_angles,
                     "Trials for the angle-bound suite")
      ->capture_default_str();
  verify->add_option("--j1-max", v_j1max, "Index range for sweeps")
      ->capture_default_str();
  verify->add_option("--out", v_out, "Write aggregated report JSON here");
  verify->callback([&] {
    rc = run_verify(v_suites, v_all, v_trials_lemma21, v_trials_angles,
                    v_j1max, seed, v_out);
  });

  // render -----------------------------------------------------------------
  auto* render = app.add_subcommand("render", "Deterministic SVG figures");
  std::string r_spec;
  std::string r_out = "figure.svg";
  double r_cx = 0;
  double r_cy = 0;
  double r_half = 1.15;
  int r_size = 900;
  std::string r_overlay;
  double r_threshold = 0.5;
  render->add_option("--spec", r_spec, "Domain spec JSON")
      ->required()
      ->check(CLI::ExistingFile);
  render->add_option("--out", r_out, "Output SVG path")
      ->capture_default_str();
  render->add_option("--cx", r_cx, "Zoom center x")->capture_default_str();
  render->add_option("--cy", r_cy, "Zoom center y")->capture_default_str();
  render->add_option("--half", r_half, "Zoom half-width")
      ->capture_default_str();
  render->add_option("--size", r_size, "Output size in pixels")
      ->capture_default_str();
  render->add_option("--overlay-pgm", r_overlay,
                     "Overlay contour of this indicator PGM")
      ->check(CLI::ExistingFile);
  render->add_option("--threshold", r_threshold, "Overlay contour level")
      ->capture_default_str();
  render->callback([&] {
    rc = run_render(r_spec, r_out, r_cx, r_cy, r_half, r_size, r_overlay,
                    r_threshold);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const VerificationViolation& e) {
    std::fprintf(stderr, "verification violation: %s\n", e.what());
    return 5;
  } catch (const ConstraintViolationError& e) {
    std::fprintf(stderr, "constraint violation: %s\n", e.what());
    return 3;
  } catch (const CertificationFailureError& e) {
    std::fprintf(stderr, "certification failure: %s\n", e.what());
    return 4;
  } catch (const DegenerateThresholdError& e) {
    std::fprintf(stderr, "certification failure: %s\n", e.what());
    return 4;
  } catch (const DepthLimitError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return rc;
}

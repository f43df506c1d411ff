#pragma once

// JSON serialization for domain specs, measure reports, solver results, and
// check reports, plus PGM image output for raster indicators.  Domain specs
// round-trip bit-for-bit: doubles are emitted in shortest round-trip form,
// and slit structures are regenerated deterministically from (epsilon,
// depth) rather than stored verbatim.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cheegerlab/cantor.hpp"
#include "cheegerlab/domain.hpp"
#include "cheegerlab/errors.hpp"
#include "cheegerlab/geometry.hpp"
#include "cheegerlab/interval.hpp"
#include "cheegerlab/porous.hpp"
#include "cheegerlab/raster.hpp"
#include "cheegerlab/solver.hpp"
#include "cheegerlab/verify.hpp"

namespace cheegerlab {

using json = nlohmann::json;

inline void to_json(json& j, const IntervalValue& v) {
  j = json::array({v.lo, v.hi});
}
inline void from_json(const json& j, IntervalValue& v) {
  v.lo = j.at(0).get<double>();
  v.hi = j.at(1).get<double>();
  v.validate();
}

inline void to_json(json& j, const Point2& p) { j = json::array({p.x, p.y}); }
inline void from_json(const json& j, Point2& p) {
  p.x = j.at(0).get<double>();
  p.y = j.at(1).get<double>();
}

inline void to_json(json& j, const Disk& d) {
  j = json{{"center", d.center}, {"radius", d.radius}};
}
inline void from_json(const json& j, Disk& d) {
  d.center = j.at("center").get<Point2>();
  d.radius = j.at("radius").get<double>();
}

inline void to_json(json& j, const IndexPair& p) {
  j = json::array({p.j1, p.j2});
}
inline void from_json(const json& j, IndexPair& p) {
  p.j1 = j.at(0).get<int>();
  p.j2 = j.at(1).get<int>();
}

inline std::string kind_name(ObstacleKind kind) {
  switch (kind) {
    case ObstacleKind::none: return "none";
    case ObstacleKind::cantor_bumps: return "cantor_bumps";
    case ObstacleKind::holes: return "holes";
  }
  throw InvalidInputError("unknown obstacle kind");
}

inline ObstacleKind kind_from_name(const std::string& name) {
  if (name == "none") return ObstacleKind::none;
  if (name == "cantor_bumps") return ObstacleKind::cantor_bumps;
  if (name == "holes") return ObstacleKind::holes;
  throw InvalidInputError("unknown obstacle kind: " + name);
}

inline json domain_to_json(const DomainSpec& spec) {
  json j;
  j["schema"] = "cheegerlab-domain/1";
  j["outer"] = spec.outer;
  j["kind"] = kind_name(spec.kind);
  if (spec.kind == ObstacleKind::cantor_bumps) {
    j["cantor"] = json{{"epsilon", spec.cantor.epsilon},
                       {"depth", spec.cantor.depth}};
  }
  if (spec.kind == ObstacleKind::holes) {
    j["holes"] = spec.holes;
  }
  if (spec.porous_meta.has_value()) {
    const PorousMeta& m = *spec.porous_meta;
    j["porous_meta"] = json{{"eps1", m.eps1},
                            {"safety", m.safety},
                            {"depth", m.depth},
                            {"start", m.start}};
  }
  if (!spec.truncation_note.empty()) {
    j["truncation_note"] = spec.truncation_note;
  }
  return j;
}

inline DomainSpec domain_from_json(const json& j) {
  if (j.value("schema", "") != "cheegerlab-domain/1") {
    throw InvalidInputError("unrecognized domain schema");
  }
  DomainSpec spec;
  spec.outer = j.at("outer").get<Disk>();
  spec.kind = kind_from_name(j.at("kind").get<std::string>());
  if (spec.kind == ObstacleKind::cantor_bumps) {
    const double eps = j.at("cantor").at("epsilon").get<double>();
    const int depth = j.at("cantor").at("depth").get<int>();
    spec.cantor = cantor_iterate(eps, depth);
  }
  if (spec.kind == ObstacleKind::holes) {
    spec.holes = j.at("holes").get<std::vector<Disk>>();
  }
  if (j.contains("porous_meta")) {
    PorousMeta m;
    m.eps1 = j.at("porous_meta").at("eps1").get<double>();
    m.safety = j.at("porous_meta").at("safety").get<double>();
    m.depth = j.at("porous_meta").at("depth").get<int>();
    m.start = j.at("porous_meta").at("start").get<IndexPair>();
    spec.porous_meta = m;
  }
  spec.truncation_note = j.value("truncation_note", "");
  return spec;
}

inline json to_json_value_or_null(double v) {
  if (std::isfinite(v)) return json(v);
  return json(nullptr);
}

inline json report_to_json(const OmegaEpsMeasures& m) {
  return json{{"perimeter", m.perimeter},
              {"area", m.area},
              {"topo_boundary_h1", m.topo_boundary_h1},
              {"cantor_gap", m.cantor_gap}};
}

inline json report_to_json(const PorousReport& m) {
  return json{{"perimeter", m.perimeter},
              {"area", m.area},
              {"delta", m.delta},
              {"delta_enclosure", m.delta_enclosure},
              {"delta_bound_ok", m.delta_bound_ok},
              {"h_upper", m.h_upper}};
}

inline json report_to_json(const ValidationReport& r) {
  json conditions = json::array();
  for (const auto& c : r.conditions) {
    conditions.push_back(json{{"label", c.label},
                              {"passed", c.passed},
                              {"margin", to_json_value_or_null(c.margin)},
                              {"detail", c.detail}});
  }
  return json{{"conditions", conditions}, {"all_passed", r.all_passed()}};
}

inline json report_to_json(const CheegerResult& r) {
  json history = json::array();
  for (const auto& it : r.history) {
    history.push_back(json::array({it.h, it.perimeter, it.area}));
  }
  return json{{"h_estimate", r.h_estimate},
              {"ratio", r.ratio},
              {"threshold_used", r.threshold_used},
              {"converged", r.converged},
              {"history", history}};
}

inline json report_to_json(const CheckReport& r) {
  return json{{"name", r.name},
              {"parameters", r.parameters},
              {"trials", r.trials},
              {"violations", r.violations},
              {"worst_margin", to_json_value_or_null(r.worst_margin)},
              {"notes", r.notes}};
}

inline json report_to_json(const PhReport& r) {
  return json{{"equality", r.equality},
              {"strict_inequality", r.strict_inequality},
              {"perimeter", r.perimeter},
              {"topological", r.topological},
              {"gap", r.gap}};
}

inline json report_to_json(const DensitySweepReport& r) {
  json levels = json::array();
  for (const auto& level : r.levels) {
    levels.push_back(json{{"s", level.s},
                          {"mean_excess", level.mean_excess},
                          {"max_ratio", level.max_ratio}});
  }
  return json{{"levels", levels},
              {"c_fit", r.c_fit},
              {"monotone", r.monotone},
              {"passed", r.passed()}};
}

inline json report_to_json(const CompetitorReport& r) {
  return json{{"j", r.j},
              {"d_q0", r.d_q0},
              {"chord_pq_upper", r.chord_pq_upper},
              {"deltaP_upper", to_json_value_or_null(r.deltaP_upper)},
              {"passed", r.passed},
              {"skipped", r.skipped},
              {"skip_reason", r.skip_reason}};
}

inline void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open for reading: " + path);
  return json::parse(in);
}

inline void save_domain(const DomainSpec& spec, const std::string& path) {
  write_json_file(domain_to_json(spec), path);
}

inline DomainSpec load_domain(const std::string& path) {
  return domain_from_json(read_json_file(path));
}

// --- PGM output (binary, 8-bit) with grid geometry in comments -----------

inline void write_pgm(const RasterField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot open for writing: " + path);
  std::ostringstream header;
  header.precision(17);
  header << "P5\n"
         << "# pixel " << field.pixel << "\n"
         << "# origin " << field.origin.x << " " << field.origin.y << "\n"
         << field.nx << " " << field.ny << "\n255\n";
  out << header.str();
  std::vector<unsigned char> row(static_cast<std::size_t>(field.nx));
  for (int j = field.ny - 1; j >= 0; --j) {  // top row first
    for (int i = 0; i < field.nx; ++i) {
      const double v = std::clamp(field.values[field.idx(i, j)], 0.0, 1.0);
      row[static_cast<std::size_t>(i)] =
          static_cast<unsigned char>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
}

inline RasterField read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open for reading: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw InvalidInputError("not a binary PGM file");
  RasterField field;
  field.pixel = 1.0;
  int maxval = 0;
  std::vector<int> dims;
  std::string token;
  while (dims.size() < 3 && in >> token) {
    if (token == "#") {
      std::string key;
      in >> key;
      if (key == "pixel") {
        in >> field.pixel;
      } else if (key == "origin") {
        in >> field.origin.x >> field.origin.y;
      } else {
        std::string rest;
        std::getline(in, rest);
      }
      continue;
    }
    dims.push_back(std::stoi(token));
  }
  if (dims.size() != 3) throw InvalidInputError("truncated PGM header");
  field.nx = dims[0];
  field.ny = dims[1];
  maxval = dims[2];
  if (field.nx <= 0 || field.ny <= 0 || maxval != 255) {
    throw InvalidInputError("unsupported PGM geometry");
  }
  in.get();  // single whitespace after maxval
  const std::size_t total =
      static_cast<std::size_t>(field.nx) * static_cast<std::size_t>(field.ny);
  std::vector<unsigned char> bytes(total);
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(total));
  if (static_cast<std::size_t>(in.gcount()) != total) {
    throw InvalidInputError("truncated PGM payload");
  }
  field.values.assign(total, 0.0);
  field.mask.assign(total, 0);
  for (int j = 0; j < field.ny; ++j) {
    const int src_row = field.ny - 1 - j;
    for (int i = 0; i < field.nx; ++i) {
      const unsigned char b =
          bytes[static_cast<std::size_t>(src_row) * field.nx + i];
      const std::size_t at = field.idx(i, j);
      field.values[at] = b / 255.0;
      field.mask[at] = b > 0 ? 1 : 0;
    }
  }
  return field;
}

}  // namespace cheegerlab

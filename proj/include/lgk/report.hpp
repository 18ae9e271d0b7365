#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lgk/cover.hpp"
#include "lgk/error.hpp"
#include "lgk/graph_io.hpp"
#include "lgk/ktheory.hpp"
#include "lgk/partition.hpp"
#include "lgk/validate.hpp"

namespace lgk {

/// Inverse of to_string(FGAbelianGroup).
inline FGAbelianGroup parse_group(std::string const& text) {
  if (text == "0") return make_group(0);
  std::size_t rank = 0;
  std::vector<Integer> torsion;
  std::size_t pos = 0;
  auto fail = [&text]() -> FGAbelianGroup {
    throw ParseError("malformed group string '" + text + "'");
  };
  while (pos < text.size()) {
    std::size_t end = text.find(" + ", pos);
    std::string part = text.substr(pos, end == std::string::npos ? end : end - pos);
    pos = end == std::string::npos ? text.size() : end + 3;
    if (part == "Z") {
      if (rank != 0 || !torsion.empty()) return fail();
      rank = 1;
    } else if (part.rfind("Z^", 0) == 0) {
      if (rank != 0 || !torsion.empty()) return fail();
      auto digits = part.substr(2);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        return fail();
      }
      rank = std::stoul(digits);
      if (rank < 2) return fail();
    } else if (part.rfind("Z/", 0) == 0) {
      auto digits = part.substr(2);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        return fail();
      }
      Integer d(digits);
      if (d < 2 || (!torsion.empty() && d % torsion.back() != 0)) return fail();
      torsion.push_back(d);
    } else {
      return fail();
    }
  }
  if (rank == 0 && torsion.empty()) return fail();
  return make_group(rank, torsion);
}

namespace detail {

inline std::string num(std::size_t n) { return std::to_string(n); }

inline std::size_t read_count(nlohmann::json const& j, char const* what) {
  auto s = json_string(j, what);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(std::string(what) + ": expected a decimal string, got '" + s + "'");
  }
  return std::stoul(s);
}

inline nlohmann::json const& field(nlohmann::json const& doc, char const* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ParseError(std::string("report document lacks '") + key + "'");
  }
  return doc.at(key);
}

inline nlohmann::json limit_json(KGroup const& g) {
  auto const* lim = std::get_if<LimitGroup>(&g);
  if (!lim) return nullptr;
  nlohmann::json out;
  out["classification"] = to_string(lim->kind);
  out["level"] = lim->kind == LimitKind::undetermined ? nlohmann::json(nullptr)
                                                      : nlohmann::json(num(lim->level));
  out["horizon"] = num(lim->horizon);
  out["beyond_horizon"] = lim->beyond_horizon;
  return out;
}

inline KGroup group_from_json(nlohmann::json const& text, nlohmann::json const& limit) {
  auto s = json_string(text, "group");
  if (limit.is_null()) return parse_group(s);
  LimitGroup g;
  auto kind = json_string(field(limit, "classification"), "classification");
  if (kind == "Stabilized") {
    g.kind = LimitKind::stabilized;
  } else if (kind == "SplitPattern") {
    g.kind = LimitKind::split_pattern;
  } else if (kind == "Undetermined") {
    g.kind = LimitKind::undetermined;
  } else {
    throw ParseError("unknown classification '" + kind + "'");
  }
  if (!field(limit, "level").is_null()) g.level = read_count(limit.at("level"), "level");
  g.horizon = read_count(field(limit, "horizon"), "horizon");
  if (!field(limit, "beyond_horizon").is_boolean()) {
    throw ParseError("beyond_horizon must be a boolean");
  }
  g.beyond_horizon = limit.at("beyond_horizon").get<bool>();
  if (g.kind == LimitKind::undetermined) {
    if (s != "undetermined") throw ParseError("undetermined limit printed as '" + s + "'");
  } else if (s.rfind("Z^inf", 0) == 0) {
    if (g.kind != LimitKind::split_pattern) throw ParseError("Z^inf outside a split pattern");
    g.added_free_rank = std::nullopt;
    if (s.size() > 5) {
      if (s.compare(5, 3, " + ") != 0) throw ParseError("malformed group string '" + s + "'");
      g.base = parse_group(s.substr(8));
      if (g.base.free_rank != 0) throw ParseError("malformed group string '" + s + "'");
    }
  } else {
    g.base = parse_group(s);
    g.added_free_rank = 0;
  }
  return g;
}

}  // namespace detail

/// Report document: every integer is a decimal string. Limit groups carry a
/// classification block under "k0_limit" / "k1_limit" (null otherwise).
inline nlohmann::json ktheory_to_json(KTheoryResult const& r) {
  nlohmann::json doc;
  doc["mode"] = to_string(r.mode);
  doc["k0"] = to_string(r.k0);
  doc["k1"] = to_string(r.k1);
  doc["k0_limit"] = detail::limit_json(r.k0);
  doc["k1_limit"] = detail::limit_json(r.k1);
  doc["stabilized_at"] =
      r.stabilized_at ? nlohmann::json(detail::num(*r.stabilized_at)) : nlohmann::json(nullptr);
  doc["levels"] = nlohmann::json::array();
  for (auto const& row : r.levels) {
    doc["levels"].push_back({{"level", detail::num(row.level)},
                             {"class_count", detail::num(row.class_count)},
                             {"ker", to_string(row.ker)},
                             {"coker", to_string(row.coker)}});
  }
  doc["checks"] = nlohmann::json::array();
  for (auto const& c : r.checks) {
    doc["checks"].push_back({{"level", detail::num(c.level)}, {"passed", c.passed}});
  }
  return doc;
}

/// Reads a report document back. Coordinate data and the per-level limit
/// maps are not part of the document and come back empty.
inline KTheoryResult ktheory_from_json(nlohmann::json const& doc) {
  using detail::field;
  KTheoryResult r;
  auto mode = detail::json_string(field(doc, "mode"), "mode");
  bool found = false;
  for (auto m : {KMode::stabilized, KMode::tower, KMode::explicit_family, KMode::graph_algebra}) {
    if (mode == to_string(m)) {
      r.mode = m;
      found = true;
    }
  }
  if (!found) throw ParseError("unknown mode '" + mode + "'");
  r.k0 = detail::group_from_json(field(doc, "k0"), doc.value("k0_limit", nlohmann::json()));
  r.k1 = detail::group_from_json(field(doc, "k1"), doc.value("k1_limit", nlohmann::json()));
  if (!field(doc, "stabilized_at").is_null()) {
    r.stabilized_at = detail::read_count(doc.at("stabilized_at"), "stabilized_at");
  }
  if (!field(doc, "levels").is_array() || !field(doc, "checks").is_array()) {
    throw ParseError("levels and checks must be arrays");
  }
  for (auto const& row : doc.at("levels")) {
    r.levels.push_back({detail::read_count(field(row, "level"), "level"),
                        detail::read_count(field(row, "class_count"), "class_count"),
                        parse_group(detail::json_string(field(row, "ker"), "ker")),
                        parse_group(detail::json_string(field(row, "coker"), "coker"))});
  }
  for (auto const& c : doc.at("checks")) {
    if (!field(c, "passed").is_boolean()) throw ParseError("passed must be a boolean");
    r.checks.push_back({detail::read_count(field(c, "level"), "level"), c.at("passed").get<bool>()});
  }
  return r;
}

namespace detail {

inline std::string limit_note(KGroup const& g) {
  auto const* lim = std::get_if<LimitGroup>(&g);
  if (!lim) return "";
  std::string out = std::string("  [") + to_string(lim->kind);
  if (lim->kind != LimitKind::undetermined) out += " from level " + num(lim->level);
  out += ", horizon " + num(lim->horizon);
  if (lim->beyond_horizon) {
    out += ", pattern asserted beyond horizon";
  } else if (lim->kind == LimitKind::stabilized) {
    out += ", verified up to horizon";
  }
  return out + "]";
}

inline std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

}  // namespace detail

inline std::string ktheory_to_text(KTheoryResult const& r) {
  std::string out;
  out += "mode: " + std::string(to_string(r.mode)) + "\n";
  out += "K0: " + to_string(r.k0) + detail::limit_note(r.k0) + "\n";
  out += "K1: " + to_string(r.k1) + detail::limit_note(r.k1) + "\n";
  out += "stabilized_at: " +
         (r.stabilized_at ? detail::num(*r.stabilized_at) : std::string("none")) + "\n";
  if (!r.levels.empty()) {
    std::size_t wk = 3, wc = 5;
    for (auto const& row : r.levels) {
      wk = std::max(wk, to_string(row.ker).size());
      wc = std::max(wc, to_string(row.coker).size());
    }
    out += detail::pad("level", 7) + detail::pad("classes", 9) + detail::pad("ker", wk + 2) +
           "coker\n";
    for (auto const& row : r.levels) {
      out += detail::pad(detail::num(row.level), 7) +
             detail::pad(detail::num(row.class_count), 9) +
             detail::pad(to_string(row.ker), wk + 2) + to_string(row.coker) + "\n";
    }
  }
  for (auto const& c : r.checks) {
    out += "intertwining level " + detail::num(c.level) + ": " +
           (c.passed ? "pass" : "FAIL") + "\n";
  }
  return out;
}

inline nlohmann::json validation_to_json(ValidationReport const& rep) {
  nlohmann::json doc;
  doc["ok"] = rep.ok();
  doc["flags"] = nlohmann::json::array();
  for (auto const& [name, flag, good] : rep.entries()) {
    if (!*flag) continue;
    doc["flags"].push_back({{"name", name},
                            {"value", (*flag)->value},
                            {"problem", (*flag)->value != good},
                            {"witness", (*flag)->witness}});
  }
  return doc;
}

inline std::string validation_to_text(ValidationReport const& rep) {
  std::string out;
  for (auto const& [name, flag, good] : rep.entries()) {
    if (!*flag) continue;
    out += std::string(name) + ": " + ((*flag)->value ? "true" : "false");
    if ((*flag)->value != good) out += "  witness " + (*flag)->witness;
    out += "\n";
  }
  out += rep.ok() ? "ok\n" : "FAILED\n";
  return out;
}

inline nlohmann::json tower_to_json(LabelledGraph const& g, PartitionTower const& t) {
  nlohmann::json doc;
  doc["levels"] = nlohmann::json::array();
  for (auto const& p : t.partitions) {
    nlohmann::json classes = nlohmann::json::array();
    for (auto const& c : p.classes) {
      nlohmann::json names = nlohmann::json::array();
      for (auto v : c) names.push_back(g.vertex_name(v));
      classes.push_back(std::move(names));
    }
    doc["levels"].push_back({{"level", detail::num(p.level)}, {"classes", std::move(classes)}});
  }
  doc["stabilized_at"] =
      t.stabilized_at ? nlohmann::json(detail::num(*t.stabilized_at)) : nlohmann::json(nullptr);
  return doc;
}

/// Graph document with a "state_map" annex naming the input vertices behind
/// each cover vertex.
inline nlohmann::json cover_to_json(LabelledGraph const& g, CoverResult const& c) {
  nlohmann::json doc = graph_to_json(c.cover);
  nlohmann::json annex = nlohmann::json::object();
  for (std::size_t v = 0; v < c.cover.vertex_count(); ++v) {
    nlohmann::json names = nlohmann::json::array();
    for (auto u : c.state_map[v]) names.push_back(g.vertex_name(u));
    annex[c.cover.vertex_name(v)] = std::move(names);
  }
  doc["state_map"] = std::move(annex);
  doc["trimmed"] = c.trimmed;
  return doc;
}

inline std::string cover_to_text(LabelledGraph const& g, CoverResult const& c) {
  std::string out;
  for (std::size_t v = 0; v < c.cover.vertex_count(); ++v) {
    out += "state " + c.cover.vertex_name(v) + " = " + g.format(c.state_map[v]) + "\n";
  }
  for (auto const& e : c.cover.edges()) {
    out += c.cover.vertex_name(e.source) + " -" + c.cover.label_name(e.label) + "-> " +
           c.cover.vertex_name(e.target) + "\n";
  }
  return out;
}

}  // namespace lgk

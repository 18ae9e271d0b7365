#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lgk/error.hpp"
#include "lgk/graph.hpp"
#include "lgk/graph_io.hpp"
#include "lgk/int_matrix.hpp"
#include "lgk/ktheory.hpp"
#include "lgk/partition.hpp"

namespace lgk {

/// Level data of a possibly infinite labelled graph: dims[k] = |Omega_{k+1}|,
/// phi[k] = (1-Phi)_{k+1} and incl[k] = i_{k+1}, both dims[k+1] x dims[k].
/// A system with horizon H has H maps and H + 1 dims.
struct LevelSystem {
  std::vector<std::size_t> dims;
  std::vector<IntMatrix> phi;
  std::vector<IntMatrix> incl;
  std::vector<std::vector<std::string>> labels;

  std::size_t horizon() const noexcept { return phi.size(); }
};

struct LevelIssue {
  std::string kind;
  std::size_t level = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string detail;
};

inline std::string to_string(LevelIssue const& i) {
  std::string out = i.kind + " at level " + std::to_string(i.level);
  if (i.kind == "intertwining" || i.kind == "inclusion_entry" ||
      i.kind == "inclusion_column") {
    out += " (row " + std::to_string(i.row) + ", col " + std::to_string(i.col) + ")";
  }
  if (!i.detail.empty()) out += ": " + i.detail;
  return out;
}

struct LevelReport {
  std::vector<LevelIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Shapes, 0/1 inclusions with nonzero columns, and
/// phi[k+1] incl[k] == incl[k+1] phi[k] at every level that has both maps.
inline LevelReport validate_levels(LevelSystem const& ls) {
  LevelReport rep;
  auto issue = [&rep](std::string kind, std::size_t level, std::size_t row,
                      std::size_t col, std::string detail) {
    rep.issues.push_back({std::move(kind), level, row, col, std::move(detail)});
  };
  std::size_t const h = ls.phi.size();
  if (ls.incl.size() != h) {
    issue("shape", 0, 0, 0, std::to_string(h) + " phi maps but " +
                                std::to_string(ls.incl.size()) + " inclusions");
    return rep;
  }
  if (h > 0 && ls.dims.size() != h + 1) {
    issue("shape", 0, 0, 0, std::to_string(h) + " maps need " + std::to_string(h + 1) +
                                " dims, got " + std::to_string(ls.dims.size()));
    return rep;
  }
  for (std::size_t k = 0; k < ls.dims.size(); ++k) {
    if (ls.dims[k] == 0) issue("shape", k + 1, 0, 0, "dimension must be positive");
  }
  if (!ls.labels.empty()) {
    if (ls.labels.size() != ls.dims.size()) {
      issue("labels", 0, 0, 0, "one label list per dim expected");
    } else {
      for (std::size_t k = 0; k < ls.dims.size(); ++k) {
        if (ls.labels[k].size() != ls.dims[k]) {
          issue("labels", k + 1, 0, 0, "label count differs from dim");
        }
      }
    }
  }
  bool shapes_ok = true;
  for (std::size_t k = 0; k < h; ++k) {
    for (auto const* m : {&ls.phi[k], &ls.incl[k]}) {
      if (m->rows() != ls.dims[k + 1] || m->cols() != ls.dims[k]) {
        shapes_ok = false;
        issue("shape", k + 1, 0, 0,
              std::string(m == &ls.phi[k] ? "phi" : "incl") + " is " + m->shape() +
                  ", expected " + std::to_string(ls.dims[k + 1]) + "x" +
                  std::to_string(ls.dims[k]));
      }
    }
  }
  if (!shapes_ok) return rep;
  for (std::size_t k = 0; k < h; ++k) {
    auto const& m = ls.incl[k];
    for (std::size_t j = 0; j < m.cols(); ++j) {
      bool nonzero = false;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m(i, j) != 0 && m(i, j) != 1) {
          issue("inclusion_entry", k + 1, i, j, "entry " + m(i, j).str());
        }
        nonzero = nonzero || m(i, j) != 0;
      }
      if (!nonzero) issue("inclusion_column", k + 1, 0, j, "zero column");
    }
  }
  for (std::size_t k = 0; k + 1 < h; ++k) {
    IntMatrix const lhs = ls.phi[k + 1] * ls.incl[k];
    IntMatrix const rhs = ls.incl[k + 1] * ls.phi[k];
    bool found = false;
    for (std::size_t i = 0; i < lhs.rows() && !found; ++i) {
      for (std::size_t j = 0; j < lhs.cols() && !found; ++j) {
        if (lhs(i, j) != rhs(i, j)) {
          issue("intertwining", k + 1, i, j,
                lhs(i, j).str() + " != " + rhs(i, j).str());
          found = true;
        }
      }
    }
  }
  return rep;
}

/// phi = I^t - M^t and incl = I^t for a symbolic matrix system, where
/// M[k], I[k] are m(k+1) x m(k+2) nonnegative matrices.
inline LevelSystem from_symbolic_matrix_system(std::vector<IntMatrix> const& m_list,
                                               std::vector<IntMatrix> const& i_list) {
  if (m_list.size() != i_list.size()) {
    throw ShapeError("symbolic matrix system: " + std::to_string(m_list.size()) +
                     " M matrices but " + std::to_string(i_list.size()) + " I matrices");
  }
  LevelSystem ls;
  for (std::size_t k = 0; k < m_list.size(); ++k) {
    auto const& m = m_list[k];
    auto const& i = i_list[k];
    if (m.rows() != i.rows() || m.cols() != i.cols()) {
      throw ShapeError("symbolic matrix system: M and I differ in shape at level " +
                       std::to_string(k + 1));
    }
    if (k == 0) {
      ls.dims.push_back(m.rows());
    } else if (ls.dims.back() != m.rows()) {
      throw ShapeError("symbolic matrix system: level " + std::to_string(k + 1) +
                       " has " + std::to_string(m.rows()) + " rows, expected " +
                       std::to_string(ls.dims.back()));
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (m(r, c) < 0 || i(r, c) < 0) {
          throw PreconditionError("symbolic matrix system: negative entry at level " +
                                  std::to_string(k + 1));
        }
      }
    }
    ls.dims.push_back(m.cols());
    ls.phi.push_back(i.transpose() - m.transpose());
    ls.incl.push_back(i.transpose());
  }
  auto rep = validate_levels(ls);
  if (!rep.ok()) throw ConsistencyError(to_string(rep.issues.front()));
  return ls;
}

/// The first `horizon` maps of the generalized-vertex tower of a finite
/// graph. Labels are the classes, written as vertex sets.
inline LevelSystem from_graph(LabelledGraph const& g, std::size_t horizon) {
  if (horizon == 0) throw PreconditionError("from_graph: horizon must be >= 1");
  PartitionTower const tower = refine_tower(g, horizon + 1);
  LevelSystem ls;
  for (std::size_t l = 1; l <= horizon + 1; ++l) {
    auto const& p = tower.at(l);
    ls.dims.push_back(p.size());
    std::vector<std::string> names;
    for (auto const& c : p.classes) names.push_back(g.format(c));
    ls.labels.push_back(std::move(names));
  }
  for (std::size_t l = 1; l <= horizon; ++l) {
    ls.phi.push_back(one_minus_phi_matrix(g, tower, l));
    ls.incl.push_back(inclusion_matrix(g, tower, l));
  }
  return ls;
}

namespace detail {

// Subset of Z: `finite` plus, when set, every n with |n| >= tail.
struct IntSubset {
  std::set<long> finite;
  std::optional<long> tail;
};

inline IntSubset shift(IntSubset const& s, long d) {
  IntSubset out;
  for (long n : s.finite) out.finite.insert(n + d);
  if (s.tail) {
    long const t = *s.tail;
    out.tail = t + 1;
    // {n + d : |n| >= t} = {|m| >= t + 1} plus the two points next to the
    // shifted-in side.
    if (d == 1) {
      out.finite.insert({-t, -t + 1});
    } else {
      out.finite.insert({t, t - 1});
    }
  }
  return out;
}

// Coordinates in the level-m basis 0, 1, -1, ..., m-1, -(m-1), rest_m.
inline std::vector<Integer> int_line_coords(IntSubset const& s, long m) {
  std::vector<Integer> x(static_cast<std::size_t>(2 * m), 0);
  auto slot = [m](long n) {
    return n == 0 ? 0 : static_cast<std::size_t>(n > 0 ? 2 * n - 1 : -2 * n);
  };
  for (long n = -(m - 1); n < m; ++n) {
    if (s.finite.count(n) || (s.tail && std::labs(n) >= *s.tail)) x[slot(n)] = 1;
  }
  bool rest = false;
  if (s.tail && *s.tail <= m) {
    rest = true;
  } else {
    long const upto = s.tail ? *s.tail : m;
    bool any = false, all = true;
    for (long n = m; n < upto; ++n) {
      for (long v : {n, -n}) {
        bool in = s.finite.count(v) > 0;
        any = any || in;
        all = all && in;
      }
    }
    for (long n : s.finite) any = any || std::labs(n) >= m;
    if (s.tail) {
      if (!all) throw ConsistencyError("int_line: set is not a union of level classes");
      rest = true;
    } else if (any) {
      throw ConsistencyError("int_line: set is not a union of level classes");
    }
  }
  x.back() = rest ? 1 : 0;
  return x;
}

// Word over {1, 2} of the given length and lexicographic index.
inline std::string dyck_word(std::size_t index, std::size_t len) {
  std::string w(len, '1');
  for (std::size_t k = 0; k < len; ++k) {
    if (index >> (len - 1 - k) & 1) w[k] = '2';
  }
  return w;
}

inline std::size_t dyck_index(std::string const& w) {
  std::size_t x = 0;
  for (char c : w) x = 2 * x + (c == '2');
  return x;
}

inline std::string dyck_label(std::string const& w) {
  std::string out;
  for (char c : w) out += std::string("a") + c;
  return out;
}

// Adds sign * chi_{r(u)} in the level-m word basis: r(u) is the disjoint
// union of r(vu) over all words v of length m - |u|.
inline void add_dyck_range(std::vector<Integer>& x, std::string const& u,
                           std::size_t m, long sign) {
  std::size_t const pre = m - u.size();
  for (std::size_t v = 0; v < (std::size_t(1) << pre); ++v) {
    x[dyck_index(dyck_word(v, pre) + u)] += sign;
  }
}

}  // namespace detail

/// The integer line: vertices Z, edges n -b-> n+1 and n+1 -c-> n, and an
/// a-loop at 0. Omega_l = {0, 1, -1, ..., l-1, -(l-1), rest_l} with
/// rest_l = {|n| >= l}.
inline LevelSystem int_line_levels(std::size_t horizon = 8) {
  if (horizon == 0) throw PreconditionError("int_line: horizon must be >= 1");
  LevelSystem ls;
  auto basis = [](long l) {
    std::vector<detail::IntSubset> out{{{0}, std::nullopt}};
    for (long n = 1; n < l; ++n) {
      out.push_back({{n}, std::nullopt});
      out.push_back({{-n}, std::nullopt});
    }
    out.push_back({{}, l});
    return out;
  };
  auto names = [](long l) {
    std::vector<std::string> out{"0"};
    for (long n = 1; n < l; ++n) {
      out.push_back(std::to_string(n));
      out.push_back(std::to_string(-n));
    }
    out.push_back("rest_" + std::to_string(l));
    return out;
  };
  for (long l = 1; l <= static_cast<long>(horizon) + 1; ++l) {
    ls.dims.push_back(static_cast<std::size_t>(2 * l));
    ls.labels.push_back(names(l));
  }
  for (long l = 1; l <= static_cast<long>(horizon); ++l) {
    auto const here = basis(l);
    IntMatrix phi(static_cast<std::size_t>(2 * l + 2), here.size());
    IntMatrix incl(phi.rows(), phi.cols());
    for (std::size_t c = 0; c < here.size(); ++c) {
      auto const& s = here[c];
      auto own = detail::int_line_coords(s, l + 1);
      auto right = detail::int_line_coords(detail::shift(s, 1), l + 1);
      auto left = detail::int_line_coords(detail::shift(s, -1), l + 1);
      std::vector<Integer> loop(phi.rows(), 0);
      if (s.finite.count(0)) loop[0] = 1;
      for (std::size_t r = 0; r < phi.rows(); ++r) {
        incl(r, c) = own[r];
        phi(r, c) = own[r] - right[r] - left[r] - loop[r];
      }
    }
    ls.phi.push_back(std::move(phi));
    ls.incl.push_back(std::move(incl));
  }
  return ls;
}

namespace detail {

// Known images of (1-Phi)_1 and (1-Phi)_2 on the word basis, one column
// per source word.
inline std::vector<std::vector<std::vector<long>>> dyck_reference() {
  return {
      {{-1, -2, 0, -1}, {-1, 0, -2, -1}},
      {{-1, -1, -1, 0, 0, 0, -1, 0},
       {-1, 1, -2, -1, -1, 1, -1, 0},
       {0, -1, 1, -1, -1, -2, 1, -1},
       {0, -1, 0, 0, 0, -1, -1, -1}},
  };
}

}  // namespace detail

/// The Dyck shift D_2 on generators a1, a2 and their partners b1, b2.
/// Omega_l is the set of words of length l over {a1, a2}; r(w, a_i) = w a_i,
/// r(w a_i, b_j) = r(w) when i = j and is empty otherwise, with r of the
/// empty word equal to every vertex. Levels 1 and 2 are checked against the
/// known reference images and generation fails on any mismatch.
inline LevelSystem dyck2_levels(std::size_t horizon = 8) {
  if (horizon == 0) throw PreconditionError("dyck2: horizon must be >= 1");
  if (horizon > 20) throw ResourceError("dyck2: horizon above 20 is not supported");
  LevelSystem ls;
  for (std::size_t l = 1; l <= horizon + 1; ++l) {
    std::size_t const n = std::size_t(1) << l;
    ls.dims.push_back(n);
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) names.push_back(detail::dyck_label(detail::dyck_word(k, l)));
    ls.labels.push_back(std::move(names));
  }
  auto const reference = detail::dyck_reference();
  for (std::size_t l = 1; l <= horizon; ++l) {
    std::size_t const n = std::size_t(1) << l;
    IntMatrix phi(2 * n, n), incl(2 * n, n);
    for (std::size_t c = 0; c < n; ++c) {
      std::string const w = detail::dyck_word(c, l);
      std::vector<Integer> x(2 * n, 0);
      detail::add_dyck_range(x, w, l + 1, +1);
      for (std::size_t r = 0; r < 2 * n; ++r) incl(r, c) = x[r];
      for (char a : {'1', '2'}) detail::add_dyck_range(x, w + a, l + 1, -1);
      // The b_j with j equal to the last letter of w; the other is empty.
      detail::add_dyck_range(x, w.substr(0, l - 1), l + 1, -1);
      for (std::size_t r = 0; r < 2 * n; ++r) phi(r, c) = x[r];
      if (l <= reference.size()) {
        for (std::size_t r = 0; r < 2 * n; ++r) {
          if (phi(r, c) != reference[l - 1][c][r]) {
            throw ConsistencyError("dyck2: level " + std::to_string(l) +
                                   " image of " + detail::dyck_label(w) +
                                   " disagrees with the reference coefficients");
          }
        }
      }
    }
    ls.phi.push_back(std::move(phi));
    ls.incl.push_back(std::move(incl));
  }
  return ls;
}

enum class GeneratorKind { dyck2, int_line, from_graph };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::dyck2;
  std::size_t max_level = 8;
  std::optional<LabelledGraph> graph;
};

inline LevelSystem builtin_generator(GeneratorSpec const& spec) {
  if (spec.max_level == 0) throw PreconditionError("generator: max_level must be >= 1");
  LevelSystem ls;
  switch (spec.kind) {
    case GeneratorKind::dyck2:
      ls = dyck2_levels(spec.max_level);
      break;
    case GeneratorKind::int_line:
      ls = int_line_levels(spec.max_level);
      break;
    case GeneratorKind::from_graph:
      if (!spec.graph) throw PreconditionError("generator: from_graph needs a graph");
      ls = from_graph(*spec.graph, spec.max_level);
      break;
  }
  auto rep = validate_levels(ls);
  if (!rep.ok()) throw ConsistencyError("generator: " + to_string(rep.issues.front()));
  return ls;
}

/// Per-level groups and both direct limits of a validated system.
inline KTheoryResult limit_ktheory(LevelSystem const& ls) {
  auto rep = validate_levels(ls);
  if (!rep.ok()) throw PreconditionError("limit_ktheory: " + to_string(rep.issues.front()));
  std::vector<std::size_t> counts(ls.dims.begin(),
                                  ls.dims.begin() + static_cast<long>(ls.phi.size()));
  return ladder_ktheory(ls.phi, ls.incl, counts);
}

namespace detail {

inline Integer json_integer(nlohmann::json const& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    auto const s = j.get<std::string>();
    std::size_t const start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == start ||
        s.find_first_not_of("0123456789", start) != std::string::npos) {
      throw ParseError("not a decimal integer: \"" + s + "\"");
    }
    return Integer(s);
  }
  throw ParseError("matrix entry must be an integer or decimal string, got " + j.dump());
}

inline IntMatrix json_matrix(nlohmann::json const& j, std::size_t rows,
                             std::size_t cols, std::string const& what) {
  if (!j.is_array() || j.size() != rows) {
    throw ParseError(what + ": expected " + std::to_string(rows) + " rows");
  }
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ParseError(what + ": row " + std::to_string(r) + " needs " +
                       std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = json_integer(j[r][c]);
  }
  return m;
}

inline nlohmann::json matrix_json(IntMatrix const& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// {"dims": [...], "phi": [row-major matrices], "incl": [...], "labels": [...]}.
/// Entries may be JSON integers or decimal strings.
inline LevelSystem level_system_from_json(nlohmann::json const& doc) {
  if (!doc.is_object()) throw ParseError("level-system document must be an object");
  for (auto const& [key, _] : doc.items()) {
    if (key != "dims" && key != "phi" && key != "incl" && key != "labels") {
      throw ParseError("unknown level-system field '" + key + "'");
    }
  }
  for (char const* key : {"dims", "phi", "incl"}) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw ParseError(std::string("level-system field '") + key + "' must be a list");
    }
  }
  LevelSystem ls;
  for (auto const& d : doc["dims"]) {
    if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) {
      throw ParseError("dims must be positive integers, got " + d.dump());
    }
    ls.dims.push_back(d.get<std::size_t>());
  }
  std::size_t const h = doc["phi"].size();
  if (doc["incl"].size() != h) throw ParseError("'phi' and 'incl' differ in length");
  if (h > 0 && ls.dims.size() != h + 1) {
    throw ParseError(std::to_string(h) + " maps need " + std::to_string(h + 1) + " dims");
  }
  for (std::size_t k = 0; k < h; ++k) {
    std::string const lvl = " level " + std::to_string(k + 1);
    ls.phi.push_back(detail::json_matrix(doc["phi"][k], ls.dims[k + 1], ls.dims[k], "phi" + lvl));
    ls.incl.push_back(detail::json_matrix(doc["incl"][k], ls.dims[k + 1], ls.dims[k], "incl" + lvl));
  }
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() || doc["labels"].size() != ls.dims.size()) {
      throw ParseError("'labels' needs one list per dim");
    }
    for (std::size_t k = 0; k < ls.dims.size(); ++k) {
      auto const& names = doc["labels"][k];
      if (!names.is_array() || names.size() != ls.dims[k]) {
        throw ParseError("labels at level " + std::to_string(k + 1) + " need " +
                         std::to_string(ls.dims[k]) + " names");
      }
      std::vector<std::string> out;
      for (auto const& n : names) out.push_back(detail::json_string(n, "label"));
      ls.labels.push_back(std::move(out));
    }
  }
  return ls;
}

inline LevelSystem parse_level_system(std::string const& text) {
  return level_system_from_json(detail::parse_json(text));
}

inline LevelSystem load_level_system(std::string const& path) {
  return parse_level_system(read_file(path));
}

inline nlohmann::json level_system_to_json(LevelSystem const& ls) {
  nlohmann::json doc;
  doc["dims"] = ls.dims;
  doc["phi"] = nlohmann::json::array();
  doc["incl"] = nlohmann::json::array();
  for (auto const& m : ls.phi) doc["phi"].push_back(detail::matrix_json(m));
  for (auto const& m : ls.incl) doc["incl"].push_back(detail::matrix_json(m));
  if (!ls.labels.empty()) doc["labels"] = ls.labels;
  return doc;
}

}  // namespace lgk

#pragma once

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lgk/lgk.hpp"

namespace lgk::cli {

enum ExitStatus { exit_ok = 0, exit_invalid = 1, exit_input = 2 };

struct Options {
  std::string input;
  std::string emit = "text";
  std::string family = "e0minus";
  std::string generator;
  std::size_t max_level = 32;
  std::size_t horizon = 8;
};

namespace detail {

inline void emit(std::ostream& out, Options const& o, nlohmann::json const& doc,
                 std::string const& text) {
  if (o.emit == "structured") {
    out << doc.dump(2) << "\n";
  } else {
    out << text;
  }
}

inline void emit_ktheory(std::ostream& out, Options const& o, KTheoryResult const& r) {
  emit(out, o, ktheory_to_json(r), ktheory_to_text(r));
}

inline SetFamily family_for(LabelledGraph const& g, Options const& o) {
  if (o.family == "e0minus") return close_under_unions(build_E0minus(g));
  return parse_family(g, read_file(o.family));
}

inline int run_validate(std::ostream& out, Options const& o, bool family_given) {
  auto g = load_graph(o.input);
  auto rep = validate_graph(g, o.horizon);
  if (family_given) {
    auto fam = validate_family(g, family_for(g, o), {o.family == "e0minus"});
    fam.set_finite_at_horizon = rep.set_finite_at_horizon;
    fam.receiver_set_finite_at_horizon = rep.receiver_set_finite_at_horizon;
    rep = fam;
  }
  emit(out, o, validation_to_json(rep), validation_to_text(rep));
  return rep.ok() ? exit_ok : exit_invalid;
}

inline int run_partitions(std::ostream& out, Options const& o) {
  auto g = load_graph(o.input);
  auto t = refine_tower(g, o.max_level);
  emit(out, o, tower_to_json(g, t), dump_tower_text(g, t));
  return exit_ok;
}

inline int run_family(std::ostream& out, Options const& o) {
  auto g = load_graph(o.input);
  auto fam = family_for(g, o);
  emit_ktheory(out, o, ktheory_explicit_family(g, fam, {o.family == "e0minus"}));
  return exit_ok;
}

inline int run_levels(std::ostream& out, Options const& o) {
  LevelSystem ls;
  if (!o.generator.empty()) {
    GeneratorSpec spec;
    spec.kind = o.generator == "dyck2" ? GeneratorKind::dyck2 : GeneratorKind::int_line;
    spec.max_level = o.horizon;
    ls = builtin_generator(spec);
  } else {
    ls = load_level_system(o.input);
  }
  emit_ktheory(out, o, limit_ktheory(ls));
  return exit_ok;
}

inline int run_cover(std::ostream& out, Options const& o) {
  auto g = load_graph(o.input);
  auto c = trimmed_cover(g);
  emit(out, o, cover_to_json(g, c), cover_to_text(g, c));
  return exit_ok;
}

}  // namespace detail

/// Parses argv and runs one subcommand. Exit status 0 on success, 1 when the
/// input is well formed but fails validation or a precondition, 2 when it
/// cannot be read or parsed.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"K-theory of labelled graph C*-algebras"};
  app.name("lgk");
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--emit", o.emit, "Output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
  };
  auto graph_input = [&o](CLI::App* sub) {
    sub->add_option("graph", o.input, "Graph document")->required();
  };

  auto* validate = app.add_subcommand("validate", "Structural checks on a graph (and family)");
  graph_input(validate);
  auto* vfam = validate->add_option("--family", o.family,
                                    "Also check a family: 'e0minus' or a family document");
  validate->add_option("--horizon", o.horizon, "Horizon for the finiteness flags")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  common(validate);

  auto* partitions = app.add_subcommand("partitions", "Generalized-vertex partition tower");
  graph_input(partitions);
  partitions->add_option("--max-level", o.max_level, "Refinement cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  common(partitions);

  auto* ktheory = app.add_subcommand("ktheory", "K-theory from the partition tower");
  graph_input(ktheory);
  ktheory->add_option("--max-level", o.max_level, "Refinement cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  common(ktheory);

  auto* graph = app.add_subcommand("graph", "K-theory of the unlabelled graph algebra");
  graph_input(graph);
  common(graph);

  auto* family = app.add_subcommand("family", "K-theory from an explicit family of vertex sets");
  graph_input(family);
  family->add_option("--family", o.family, "'e0minus' or a family document")
      ->capture_default_str();
  common(family);

  auto* levels = app.add_subcommand("levels", "Inductive-limit K-theory of a level system");
  auto* lfile = levels->add_option("levels", o.input, "Level-system document");
  auto* lgen = levels->add_option("--generator", o.generator, "Built-in level system")
                   ->check(CLI::IsMember({"dyck2", "int_line"}));
  levels->add_option("--horizon", o.horizon, "Levels to generate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lfile->excludes(lgen);
  common(levels);

  auto* cover = app.add_subcommand("cover", "Predecessor-set cover, trimmed to its essential part");
  graph_input(cover);
  common(cover);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return exit_ok;
  } catch (CLI::CallForAllHelp const&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (CLI::ParseError const& e) {
    err << "lgk: " << e.what() << "\n";
    return exit_input;
  }
  if (levels->parsed() && o.input.empty() && o.generator.empty()) {
    err << "lgk: levels needs a level-system document or --generator\n";
    return exit_input;
  }
  try {
    if (validate->parsed()) return detail::run_validate(out, o, vfam->count() > 0);
    if (partitions->parsed()) return detail::run_partitions(out, o);
    if (ktheory->parsed()) {
      detail::emit_ktheory(out, o, ktheory_of_labelled_graph(load_graph(o.input), o.max_level));
      return exit_ok;
    }
    if (graph->parsed()) {
      detail::emit_ktheory(out, o, graph_algebra_ktheory(load_graph(o.input)));
      return exit_ok;
    }
    if (family->parsed()) return detail::run_family(out, o);
    if (levels->parsed()) return detail::run_levels(out, o);
    return detail::run_cover(out, o);
  } catch (PreconditionError const& e) {
    err << "lgk: " << e.what() << "\n";
    return exit_invalid;
  } catch (ConsistencyError const& e) {
    err << "lgk: " << e.what() << "\n";
    return exit_invalid;
  } catch (std::exception const& e) {
    err << "lgk: " << e.what() << "\n";
    return exit_input;
  }
}

}  // namespace lgk::cli

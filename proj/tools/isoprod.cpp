// Command-line front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "isoprod/catalog.hpp"
#include "isoprod/classify.hpp"
#include "isoprod/orbits.hpp"
#include "isoprod/spherical.hpp"
#include "isoprod/typesys.hpp"

using namespace isoprod;

namespace {

std::size_t parse_size(const std::string& text) {
  std::size_t pos = 0;
  double value = std::stod(text, &pos);
  std::string unit = text.substr(pos);
  double scale = 1024.0 * 1024 * 1024;
  if (unit == "B") scale = 1;
  else if (unit == "K" || unit == "KiB") scale = 1024.0;
  else if (unit == "M" || unit == "MiB") scale = 1024.0 * 1024;
  else if (unit == "G" || unit == "GiB") scale = 1024.0 * 1024 * 1024;
  else if (!unit.empty()) throw CLI::ValidationError("--memory-cap", "unknown unit '" + unit + "'");
  if (value <= 0) throw CLI::ValidationError("--memory-cap", "must be positive");
  return static_cast<std::size_t>(value * scale);
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    auto v = std::stoll(text);
    return {v, v};
  }
  return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
}

// "default", "none" or a file path.
std::optional<AutomorphismBoundTable> open_bounds(const std::string& spec) {
  if (spec == "none") return std::nullopt;
  if (spec == "default") return default_aut_bounds();
  return AutomorphismBoundTable::load(spec);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string tuple_text(std::span<const Elem> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

const GroupDefinition& lookup(const Catalog& catalog, const std::string& query) {
  const auto* def = catalog.find(query);
  if (!def) throw std::runtime_error("no catalog group matches '" + query + "'");
  return *def;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Products of curves with isotrivial fibrations: types, spherical systems and "
               "orbit counts"};
  app.require_subcommand(1);

  // types
  auto* types = app.add_subcommand("types", "List admissible types");
  bool wide = false;
  types->add_flag("--wide", wide, "Scan a larger search box as a cross-check");

  // triples
  auto* triples = app.add_subcommand("triples", "List candidate triples (m, T1, T2)");
  std::int64_t triples_max = 14112;
  std::string triples_bounds = "none";
  triples->add_option("--max-order", triples_max, "Largest group order")->capture_default_str();
  triples->add_option("--bounds", triples_bounds, "Automorphism bound table: default, none or a path")
      ->capture_default_str();

  // search
  auto* search = app.add_subcommand("search", "Count or list spherical systems of one type");
  std::string catalog_spec = "default";
  std::string search_group, search_type;
  bool search_list = false;
  unsigned search_jobs = 1;
  search->add_option("group", search_group, "Catalog key, name or id such as <48,48>")->required();
  search->add_option("type", search_type, "Type such as [2,4,6] or [2^8]")->required();
  search->add_flag("--list", search_list, "Print every system");
  search->add_option("--jobs", search_jobs, "Worker threads")->capture_default_str();
  search->add_option("--catalog", catalog_spec, "Catalog file or 'default'")->capture_default_str();

  // count
  auto* count = app.add_subcommand("count", "Count orbits of disjoint pairs for one group");
  std::string count_group, count_t1, count_t2;
  unsigned count_jobs = 1;
  std::string count_cap = "8G";
  count->add_option("group", count_group, "Catalog key, name or id")->required();
  count->add_option("t1", count_t1, "First type")->required();
  count->add_option("t2", count_t2, "Second type")->required();
  count->add_option("--jobs", count_jobs, "Worker threads")->capture_default_str();
  count->add_option("--memory-cap", count_cap, "Budget for stored tuples in GiB, or with a K/M/G suffix")
      ->capture_default_str();
  count->add_option("--catalog", catalog_spec, "Catalog file or 'default'")->capture_default_str();

  // classify
  auto* classify = app.add_subcommand("classify", "Run the classification over a catalog");
  std::string out_path = "-", report_path, cache_dir, orders = "1..2000", cap = "8G";
  std::string classify_bounds = "none";
  unsigned jobs = 1;
  classify->add_option("--catalog", catalog_spec, "Catalog file or 'default'")->capture_default_str();
  classify->add_option("--out", out_path, "CSV output path ('-' for stdout)")->capture_default_str();
  classify->add_option("--report", report_path, "JSON run report path");
  classify->add_option("--cache", cache_dir, "Directory for cached orbit counts");
  classify->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  classify->add_option("--memory-cap", cap, "Budget per task in GiB, or with a K/M/G suffix")->capture_default_str();
  classify->add_option("--orders", orders, "Order range lo..hi")->capture_default_str();
  classify->add_option("--bounds", classify_bounds, "Automorphism bound table: default, none or a path")
      ->capture_default_str();

  // exceptional
  auto* exceptional = app.add_subcommand("exceptional", "Report triples above the order limit");
  std::string exceptional_bounds = "default";
  exceptional->add_option("--bounds", exceptional_bounds,
                          "Automorphism bound table: default, none or a path")
      ->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Compare a table with the reference table");
  std::string verify_csv;
  verify->add_option("csv", verify_csv, "CSV file to check; runs the classification if omitted");
  verify->add_option("--catalog", catalog_spec, "Catalog file or 'default'")->capture_default_str();
  verify->add_option("--jobs", jobs, "Worker threads")->capture_default_str();

  // export-gap
  auto* export_gap_cmd = app.add_subcommand("export-gap", "Write a GAP script checking every entry");
  std::string gap_out = "-";
  export_gap_cmd->add_option("--catalog", catalog_spec, "Catalog file or 'default'")
      ->capture_default_str();
  export_gap_cmd->add_option("--out", gap_out, "Output path")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) std::cerr << app.help() << '\n';
    return app.exit(e);
  }

  try {
    if (*types) {
      auto list = enumerate_admissible_types(wide ? TypeSearchBounds::wide()
                                                  : TypeSearchBounds::proved());
      for (const auto& t : list)
        std::cout << t.type.to_string() << "  " << t.theta << "  " << t.alpha << '\n';
      std::cerr << list.size() << " admissible types (type, Theta, alpha)\n";
      return 0;
    }

    if (*triples) {
      auto bounds = open_bounds(triples_bounds);
      TripleFilter filter;
      filter.max_order = triples_max;
      filter.bound_table = bounds ? &*bounds : nullptr;
      auto list = candidate_triples(filter);
      for (const auto& t : list)
        std::cout << t.group_order << "  " << t.t1.type.to_string() << "  "
                  << t.t2.type.to_string() << "  " << t.g1() << "  " << t.g2() << '\n';
      std::cerr << list.size() << " triples (m, T1, T2, g1, g2)\n";
      return 0;
    }

    if (*search) {
      auto catalog = Catalog::open(catalog_spec);
      const auto& def = lookup(catalog, search_group);
      auto g = catalog.realize(def.key);
      auto t = TypeTuple::parse(search_type);
      if (search_list) {
        auto systems = enumerate_systems(*g, t);
        for (const auto& s : systems) std::cout << tuple_text(s) << '\n';
        std::cerr << systems.size() << " systems\n";
      } else {
        std::cout << count_systems(*g, t, search_jobs) << '\n';
      }
      return 0;
    }

    if (*count) {
      auto catalog = Catalog::open(catalog_spec);
      const auto& def = lookup(catalog, count_group);
      GroupContext ctx(catalog.realize(def.key));
      ComponentCountOptions opts;
      opts.jobs = count_jobs;
      opts.memory_cap_bytes = parse_size(count_cap);
      auto c = count_component_orbits(ctx, TypeTuple::parse(count_t1), TypeTuple::parse(count_t2),
                                       opts);
      std::cout << "n = " << c.n << "\n"
                << "before exchange = " << c.n_before_exchange << "\n"
                << "bounds = [" << c.lower_bound << ", " << c.upper_bound << "]\n"
                << "anchor = " << (c.anchored_on_t2 ? "t2" : "t1") << ", " << c.anchor_systems
                << " systems, " << c.anchor_hurwitz_orbits << " Hurwitz orbits, "
                << c.anchor_classes << " classes\n"
                << "partners = " << c.partner_systems << " systems, " << c.partner_hurwitz_orbits
                << " Hurwitz orbits\n";
      for (const auto& [a, b] : c.representatives)
        std::cout << tuple_text(a) << "  " << tuple_text(b) << '\n';
      return 0;
    }

    if (*classify) {
      auto catalog = Catalog::open(catalog_spec);
      auto bounds = open_bounds(classify_bounds);
      PipelineConfig config;
      config.jobs = std::max(1u, jobs);
      config.memory_cap_bytes = parse_size(cap);
      std::tie(config.min_order, config.max_order) = parse_range(orders);
      config.cache_dir = cache_dir;
      config.bound_table = bounds ? &*bounds : nullptr;
      auto result = run_pipeline(catalog, config);
      write_output(out_path, format_csv(result.rows));
      if (!report_path.empty()) write_output(report_path, format_report_json(result, config));
      std::size_t problems = result.catalog_errors.size();
      for (const auto& e : result.catalog_errors) std::cerr << "catalog: " << e << '\n';
      for (const auto& t : result.tasks)
        if (t.status == "skipped" || t.status == "error") {
          ++problems;
          std::cerr << t.status << ": " << t.group_key << " " << t.t1.to_compact_string() << " "
                    << t.t2.to_compact_string() << ": " << t.detail << '\n';
        }
      std::uint64_t total = 0;
      for (const auto& r : result.rows) total += r.n;
      std::cerr << result.rows.size() << " rows, sum n = " << total << ", "
                << result.tasks.size() << " tasks, " << result.seconds << " s\n";
      return problems ? 1 : 0;
    }

    if (*exceptional) {
      auto bounds = open_bounds(exceptional_bounds);
      std::cout << format_exceptional_report(exceptional_report(bounds ? &*bounds : nullptr));
      return 0;
    }

    if (*verify) {
      std::vector<ClassificationRow> rows;
      if (!verify_csv.empty()) {
        rows = parse_csv(read_file(verify_csv));
      } else {
        PipelineConfig config;
        config.jobs = std::max(1u, jobs);
        rows = run_pipeline(Catalog::open(catalog_spec), config).rows;
      }
      for (const auto& r : rows)
        if (auto bad = check_row_invariants(r)) {
          std::cerr << "invariant violated for " << r.id.to_string() << " "
                    << r.t1.to_compact_string() << " " << r.t2.to_compact_string() << ": " << *bad
                    << '\n';
          return 2;
        }
      auto cmp = compare_rows(rows, golden_table());
      for (const auto& d : cmp.differences) std::cerr << d << '\n';
      std::cout << (cmp.equal ? "match" : "MISMATCH") << ": " << rows.size() << " rows\n";
      return cmp.equal ? 0 : 2;
    }

    if (*export_gap_cmd) {
      auto catalog = Catalog::open(catalog_spec);
      std::ostringstream out;
      out << "# Checks every catalog entry against the small-group library.\n"
          << "# Generated by: isoprod export-gap --out tools/cas/check_catalog.g\n"
          << "SetRecursionTrapInterval(1000000);\nfailures := 0;\n";
      for (const auto& def : catalog.entries()) {
        auto g = catalog.realize(def.key);
        out << "\n# " << def.key << "\n" << export_gap(*g, "G");
        if (def.id) {
          out << "if IdGroup(G) <> [" << def.id->order << ", " << def.id->number << "] then\n"
              << "  Print(\"FAIL " << def.key << " \", IdGroup(G), \"\\n\");\n"
              << "  failures := failures + 1;\nelse\n"
              << "  Print(\"ok " << def.key << " \", IdGroup(G), \"\\n\");\nfi;\n";
        } else {
          out << "Print(\"info " << def.key << " \", IdGroup(G), \"\\n\");\n";
        }
      }
      out << "\nPrint(\"failures: \", failures, \"\\n\");\nQUIT;\n";
      write_output(gap_out, out.str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

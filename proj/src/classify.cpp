#include "isoprod/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "embedded_data.hpp"

namespace isoprod {

namespace {

int type_length_sum(const TypeTuple& a, const TypeTuple& b) { return a.length() + b.length(); }

}  // namespace

SurfaceInvariants surface_invariants(std::size_t group_order, const AdmissibleType& t1,
                                     const AdmissibleType& t2) {
  const auto order = static_cast<std::int64_t>(group_order);
  if (order <= 0 || 2 * order != std::int64_t{t1.alpha} * t2.alpha)
    throw std::invalid_argument("2|G| = " + std::to_string(2 * order) +
                                " differs from alpha(T1) alpha(T2) = " +
                                std::to_string(std::int64_t{t1.alpha} * t2.alpha));
  const std::int64_t g1 = t2.alpha + 1;
  const std::int64_t g2 = t1.alpha + 1;
  SurfaceInvariants s;
  s.k_squared = 8 * (g1 - 1) * (g2 - 1) / order;
  s.euler = s.k_squared / 2;
  s.chi = s.k_squared / 8;
  s.q = 0;
  s.p_g = s.chi - 1 + s.q;
  if (s.k_squared != 16 || s.euler != 8 || s.chi != 2 || s.chi != 1 - s.q + s.p_g)
    throw std::invalid_argument("invariants (K^2, e, chi) = (" + std::to_string(s.k_squared) +
                                ", " + std::to_string(s.euler) + ", " +
                                std::to_string(s.chi) + ") instead of (16, 8, 2)");
  return s;
}

ClassificationRow ClassificationRow::swapped() const {
  ClassificationRow r = *this;
  std::swap(r.g1, r.g2);
  std::swap(r.t1, r.t2);
  return r;
}

ClassificationRow ClassificationRow::canonical() const {
  return t2 < t1 ? swapped() : *this;
}

std::optional<std::string> check_row_invariants(const ClassificationRow& row) {
  auto a1 = admit(row.t1);
  auto a2 = admit(row.t2);
  if (!a1 || !a2) return "type is not admissible";
  if (row.g1 != a2->alpha + 1) return "g1 != alpha(T2) + 1";
  if (row.g2 != a1->alpha + 1) return "g2 != alpha(T1) + 1";
  if (2 * std::int64_t{row.id.order} != std::int64_t{row.g1 - 1} * (row.g2 - 1))
    return "2|G| != (g1 - 1)(g2 - 1)";
  if (row.d != type_length_sum(row.t1, row.t2) - 6) return "d != l(T1) + l(T2) - 6";
  if (row.n < 1) return "n < 1";
  return std::nullopt;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV line");
  return fields;
}

GroupId parse_group_id(std::string s) {
  if (s.size() >= 2 && s.front() == '<' && s.back() == '>') s = s.substr(1, s.size() - 2);
  auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("bad group id '" + s + "'");
  return GroupId{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

}  // namespace

std::string format_csv(const std::vector<ClassificationRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.g1 << ',' << r.g2 << ',' << csv_field(r.group_name) << ',' << r.id.order << ','
        << csv_field(r.id.to_string()) << ',' << csv_field(r.t1.to_compact_string()) << ','
        << csv_field(r.t2.to_compact_string()) << ',' << r.n << ',' << r.d << '\n';
  return out.str();
}

std::vector<ClassificationRow> parse_csv(std::string_view text) {
  std::vector<ClassificationRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kCsvHeader)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": expected header '" +
                                    std::string(kCsvHeader) + "'");
      header = true;
      continue;
    }
    auto f = split_csv_line(line);
    if (f.size() != 9)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 9 fields");
    try {
      ClassificationRow r;
      r.g1 = std::stoi(f[0]);
      r.g2 = std::stoi(f[1]);
      r.group_name = f[2];
      r.id = parse_group_id(f[4]);
      if (std::stoi(f[3]) != r.id.order) throw std::invalid_argument("order differs from id");
      r.t1 = TypeTuple::parse(f[5]);
      r.t2 = TypeTuple::parse(f[6]);
      r.n = std::stoull(f[7]);
      r.d = std::stoi(f[8]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!header) throw std::invalid_argument("missing CSV header");
  return rows;
}

std::vector<ClassificationRow> golden_table() { return parse_csv(embedded::kGoldenTable); }

AutomorphismBoundTable default_aut_bounds() {
  return AutomorphismBoundTable::parse(embedded::kDefaultAutBounds);
}

namespace {

std::string describe(const ClassificationRow& r) {
  return r.id.to_string() + " " + r.group_name + " " + r.t1.to_compact_string() + " " +
         r.t2.to_compact_string() + " (g1=" + std::to_string(r.g1) +
         ", g2=" + std::to_string(r.g2) + ", n=" + std::to_string(r.n) +
         ", d=" + std::to_string(r.d) + ")";
}

bool same_key(const ClassificationRow& a, const ClassificationRow& b) {
  return a.id == b.id && a.t1 == b.t1 && a.t2 == b.t2;
}

}  // namespace

GoldenComparison compare_rows(const std::vector<ClassificationRow>& computed,
                              const std::vector<ClassificationRow>& expected) {
  GoldenComparison cmp;
  std::vector<ClassificationRow> left, right;
  for (const auto& r : computed) left.push_back(r.canonical());
  for (const auto& r : expected) right.push_back(r.canonical());
  std::vector<bool> used(right.size(), false);
  for (const auto& r : left) {
    bool found = false;
    for (std::size_t i = 0; i < right.size() && !found; ++i)
      if (!used[i] && right[i] == r) used[i] = found = true;
    if (found) continue;
    // Report field differences against a row with the same group and types.
    for (std::size_t i = 0; i < right.size() && !found; ++i)
      if (!used[i] && same_key(right[i], r)) {
        used[i] = found = true;
        cmp.differences.push_back("mismatch: computed " + describe(r) + ", expected " +
                                  describe(right[i]));
      }
    if (!found) cmp.differences.push_back("unexpected row: " + describe(r));
  }
  for (std::size_t i = 0; i < right.size(); ++i)
    if (!used[i]) cmp.differences.push_back("missing row: " + describe(right[i]));
  cmp.equal = cmp.differences.empty();
  return cmp;
}

namespace {

// FNV-1a, for cache file names.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

constexpr std::string_view kCacheMagic = "isoprod-orbit-cache 1";

std::string tuple_string(const SystemTuple& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? " " : "") + std::to_string(t[i]);
  return s;
}

SystemTuple parse_tuple(std::string_view s) {
  SystemTuple t;
  std::istringstream in{std::string(s)};
  int x;
  while (in >> x) t.push_back(static_cast<Elem>(x));
  return t;
}

class OrbitCache {
 public:
  explicit OrbitCache(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }
  bool enabled() const { return !dir_.empty(); }

  static std::string key(const GroupFingerprint& f, const TypeTuple& t1, const TypeTuple& t2) {
    return format_fingerprint(f) + "|" + t1.to_string() + "|" + t2.to_string();
  }

  std::optional<ComponentCount> load(const std::string& key) const {
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line != kCacheMagic) return std::nullopt;
    if (!std::getline(in, line) || line != "key " + key) return std::nullopt;
    ComponentCount c;
    bool complete = false;
    while (std::getline(in, line)) {
      std::istringstream f(line);
      std::string tag;
      f >> tag;
      if (tag == "counts") {
        f >> c.n >> c.n_before_exchange >> c.upper_bound >> c.lower_bound >> c.exchange_checked >>
            c.anchored_on_t2 >> c.anchor_systems >> c.anchor_hurwitz_orbits >> c.anchor_classes >>
            c.partner_systems >> c.partner_hurwitz_orbits;
        if (!f) return std::nullopt;
      } else if (tag == "pair") {
        auto bar = line.find('|');
        if (bar == std::string::npos) return std::nullopt;
        c.representatives.emplace_back(parse_tuple(line.substr(5, bar - 5)),
                                       parse_tuple(line.substr(bar + 1)));
      } else if (tag == "end") {
        complete = true;
      }
    }
    if (!complete || c.representatives.size() != c.n) return std::nullopt;
    return c;
  }

  void store(const std::string& key, const ComponentCount& c) const {
    auto p = path(key);
    auto tmp = p;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << kCacheMagic << "\nkey " << key << "\ncounts " << c.n << ' ' << c.n_before_exchange
          << ' ' << c.upper_bound << ' ' << c.lower_bound << ' ' << c.exchange_checked << ' '
          << c.anchored_on_t2 << ' ' << c.anchor_systems << ' ' << c.anchor_hurwitz_orbits << ' '
          << c.anchor_classes << ' ' << c.partner_systems << ' ' << c.partner_hurwitz_orbits
          << '\n';
      for (const auto& [a, b] : c.representatives)
        out << "pair " << tuple_string(a) << " | " << tuple_string(b) << '\n';
      out << "end\n";
    }
    std::filesystem::rename(tmp, p);
  }

 private:
  std::filesystem::path path(const std::string& key) const {
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.orbits",
                  static_cast<unsigned long long>(fnv1a(key)));
    return std::filesystem::path(dir_) / name;
  }

  std::string dir_;
};

struct GroupSlot {
  const GroupDefinition* def = nullptr;
  std::shared_ptr<const FiniteGroup> group;
  std::once_flag once;
  std::unique_ptr<GroupContext> context;
  std::string context_error;
};

}  // namespace

PipelineResult run_pipeline(const Catalog& catalog, const PipelineConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  PipelineResult result;

  TripleFilter filter;
  filter.max_order = config.max_order;
  auto in_range = [&](const std::vector<CandidateTriple>& all) {
    std::vector<CandidateTriple> out;
    for (const auto& t : all)
      if (t.group_order >= config.min_order) out.push_back(t);
    return out;
  };
  auto unfiltered = in_range(candidate_triples(filter));
  filter.bound_table = config.bound_table;
  auto triples = in_range(candidate_triples(filter));
  result.candidate_triples = triples.size();
  result.pruned_by_bounds = unfiltered.size() - triples.size();

  std::vector<std::unique_ptr<GroupSlot>> slots;
  for (const auto& def : catalog.entries()) {
    auto slot = std::make_unique<GroupSlot>();
    slot->def = &def;
    try {
      slot->group = catalog.realize(def.key);
    } catch (const std::exception& e) {
      result.catalog_errors.push_back(def.key + ": " + e.what());
      continue;
    }
    slots.push_back(std::move(slot));
  }

  struct Task {
    GroupSlot* slot;
    const CandidateTriple* triple;
  };
  std::vector<Task> tasks;
  for (const auto& t : triples)
    for (auto& s : slots)
      if (static_cast<std::int64_t>(s->group->order()) == t.group_order)
        tasks.push_back({s.get(), &t});

  OrbitCache cache(config.cache_dir);
  result.tasks.resize(tasks.size());
  auto run_task = [&](std::size_t i) {
    const Task& task = tasks[i];
    TaskReport& rep = result.tasks[i];
    const auto& def = *task.slot->def;
    rep.group_key = def.key;
    rep.group_name = def.name;
    rep.id = def.id;
    rep.order = task.triple->group_order;
    rep.t1 = task.triple->t1.type;
    rep.t2 = task.triple->t2.type;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto cache_key = OrbitCache::key(fingerprint(*task.slot->group), rep.t1, rep.t2);
      std::optional<ComponentCount> cached;
      if (cache.enabled()) cached = cache.load(cache_key);
      if (cached) {
        rep.counts = std::move(*cached);
        rep.status = "cached";
      } else {
        std::call_once(task.slot->once, [&] {
          try {
            task.slot->context = std::make_unique<GroupContext>(task.slot->group);
          } catch (const std::exception& e) {
            task.slot->context_error = e.what();
          }
        });
        if (!task.slot->context) throw std::runtime_error(task.slot->context_error);
        ComponentCountOptions opts;
        opts.memory_cap_bytes = config.memory_cap_bytes;
        opts.jobs = config.jobs > 1 && tasks.size() == 1 ? config.jobs : 1;
        rep.counts = count_component_orbits(*task.slot->context, rep.t1, rep.t2, opts);
        rep.status = "ok";
        if (cache.enabled()) cache.store(cache_key, rep.counts);
      }
      if (rep.counts.n > 0)
        surface_invariants(task.slot->group->order(), task.triple->t1, task.triple->t2);
    } catch (const MemoryCapExceeded& e) {
      rep.status = "skipped";
      rep.detail = e.what();
    } catch (const std::exception& e) {
      rep.status = "error";
      rep.detail = e.what();
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, tasks.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) run_task(i);
      });
    for (auto& w : workers) w.join();
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& rep = result.tasks[i];
    if ((rep.status != "ok" && rep.status != "cached") || rep.counts.n == 0) continue;
    ClassificationRow row;
    row.g1 = tasks[i].triple->g1();
    row.g2 = tasks[i].triple->g2();
    row.group_name = rep.group_name;
    row.id = rep.id.value_or(GroupId{static_cast<int>(rep.order), 0});
    row.t1 = rep.t1;
    row.t2 = rep.t2;
    row.n = rep.counts.n;
    row.d = type_length_sum(row.t1, row.t2) - 6;
    result.rows.push_back(std::move(row));
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const ClassificationRow& a, const ClassificationRow& b) {
                     if (a.id.order != b.id.order) return a.id.order > b.id.order;
                     if (a.id.number != b.id.number) return a.id.number < b.id.number;
                     if (!(a.t1 == b.t1)) return a.t1 < b.t1;
                     return a.t2 < b.t2;
                   });
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string format_report_json(const PipelineResult& result, const PipelineConfig& config) {
  using nlohmann::json;
  json tasks = json::array();
  std::uint64_t total_n = 0;
  std::size_t skipped = 0, errors = 0;
  for (const auto& t : result.tasks) {
    json j = {{"group", t.group_key},
              {"name", t.group_name},
              {"order", t.order},
              {"t1", t.t1.to_compact_string()},
              {"t2", t.t2.to_compact_string()},
              {"status", t.status},
              {"seconds", t.seconds}};
    if (t.id) j["id"] = t.id->to_string();
    if (!t.detail.empty()) j["detail"] = t.detail;
    if (t.status == "ok" || t.status == "cached") {
      const auto& c = t.counts;
      j["n"] = c.n;
      j["n_before_exchange"] = c.n_before_exchange;
      j["upper_bound"] = c.upper_bound;
      j["lower_bound"] = c.lower_bound;
      j["exchange_checked"] = c.exchange_checked;
      j["anchored_on_t2"] = c.anchored_on_t2;
      j["anchor_systems"] = c.anchor_systems;
      j["anchor_classes"] = c.anchor_classes;
      j["partner_systems"] = c.partner_systems;
      j["partner_hurwitz_orbits"] = c.partner_hurwitz_orbits;
    }
    skipped += t.status == "skipped";
    errors += t.status == "error";
    tasks.push_back(std::move(j));
  }
  for (const auto& r : result.rows) total_n += r.n;
  json report = {{"order_range", {config.min_order, config.max_order}},
                 {"jobs", config.jobs},
                 {"memory_cap_bytes", config.memory_cap_bytes},
                 {"bound_table_entries", config.bound_table ? config.bound_table->size() : 0},
                 {"candidate_triples", result.candidate_triples},
                 {"pruned_by_bounds", result.pruned_by_bounds},
                 {"catalog_errors", result.catalog_errors},
                 {"task_count", result.tasks.size()},
                 {"skipped", skipped},
                 {"errors", errors},
                 {"rows", result.rows.size()},
                 {"total_n", total_n},
                 {"seconds", result.seconds},
                 {"tasks", std::move(tasks)}};
  return report.dump(2) + "\n";
}

namespace {

std::map<std::int64_t, std::vector<int>> prime_power_exponents(
    const std::vector<std::int64_t>& factors) {
  std::map<std::int64_t, std::vector<int>> out;
  for (std::int64_t f : factors) {
    for (std::int64_t p = 2; p * p <= f; ++p) {
      int e = 0;
      while (f % p == 0) {
        f /= p;
        ++e;
      }
      if (e) out[p].push_back(e);
    }
    if (f > 1) out[f].push_back(1);
  }
  for (auto& [p, es] : out) std::sort(es.rbegin(), es.rend());
  return out;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::string group_string(const std::vector<std::int64_t>& factors) {
  return format_invariants(factors);
}

}  // namespace

std::vector<std::int64_t> common_abelian_quotient(const std::vector<std::int64_t>& a,
                                                  const std::vector<std::int64_t>& b) {
  auto pa = prime_power_exponents(a);
  auto pb = prime_power_exponents(b);
  // Invariant factors from the largest down: the k-th largest factor takes
  // the k-th largest p-exponent of every prime.
  std::vector<std::int64_t> desc;
  for (const auto& [p, ea] : pa) {
    auto it = pb.find(p);
    if (it == pb.end()) continue;
    const auto& eb = it->second;
    for (std::size_t k = 0; k < std::min(ea.size(), eb.size()); ++k) {
      int e = std::min(ea[k], eb[k]);
      if (e == 0) break;
      if (desc.size() <= k) desc.resize(k + 1, 1);
      desc[k] *= ipow(p, e);
    }
  }
  std::reverse(desc.begin(), desc.end());
  return desc;
}

ExceptionalReport exceptional_report(const AutomorphismBoundTable* bounds,
                                     std::int64_t min_order) {
  ExceptionalReport report;
  const TypeTuple hurwitz({2, 3, 7});
  auto keep = [&](const CandidateTriple& t) {
    return t.group_order >= min_order && !(t.t1.type == hurwitz) && !(t.t2.type == hurwitz);
  };
  TripleFilter filter;
  std::vector<CandidateTriple> all;
  for (const auto& t : candidate_triples(filter))
    if (keep(t)) all.push_back(t);
  filter.bound_table = bounds;
  std::vector<CandidateTriple> kept;
  for (const auto& t : candidate_triples(filter))
    if (keep(t)) kept.push_back(t);
  for (const auto& t : all) {
    bool present = std::any_of(kept.begin(), kept.end(), [&](const CandidateTriple& k) {
      return k.group_order == t.group_order && k.t1 == t.t1 && k.t2 == t.t2;
    });
    if (!present) report.pruned_by_bounds.push_back(t);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.group_order > b.group_order;
  });

  // Derived subgroups of polygonal groups, as stated in the literature.
  const std::map<std::vector<int>, std::vector<int>> derived = {
      {{2, 3, 8}, {3, 3, 4}},
      {{3, 3, 4}, {4, 4, 4}},
  };

  for (const auto& t : kept) {
    ExceptionalEntry e;
    e.triple = t;
    e.ab1 = polygonal_abelianization(t.t1.type);
    e.ab2 = polygonal_abelianization(t.t2.type);
    e.common_ab = common_abelian_quotient(e.ab1, e.ab2);
    if (t.t1.type == t.t2.type && derived.count(t.t1.type.orders())) {
      TypeTuple cur = t.t1.type;
      std::int64_t order = t.group_order;
      while (true) {
        AbelianizationStep step;
        step.type = cur;
        step.abelianization = polygonal_abelianization(cur);
        step.order_before = order;
        auto next = derived.find(cur.orders());
        bool prime_cyclic = step.abelianization.size() == 1 &&
                            prime_power_exponents(step.abelianization).begin()->second ==
                                std::vector<int>{1};
        if (next == derived.end() || !prime_cyclic || order % step.abelianization[0] != 0) {
          e.chain.push_back(step);
          break;
        }
        order /= step.abelianization[0];
        step.order_after = order;
        e.chain.push_back(step);
        cur = TypeTuple(next->second);
      }
      const auto& last = e.chain.back();
      std::ostringstream c;
      c << "G^ab is a nontrivial quotient of " << group_string(e.ab1)
        << " (G is not perfect: perfect groups of this order are excluded by the "
           "perfect-group database, cited)";
      for (std::size_t k = 0; k + 1 < e.chain.size(); ++k)
        c << "; step " << k + 1 << ": T" << e.chain[k].type.to_string() << "^ab = "
          << group_string(e.chain[k].abelianization) << ", so the next derived subgroup has order "
          << e.chain[k].order_after << " and is a quotient of T" << e.chain[k + 1].type.to_string()
          << " (cited isomorphism" << (k > 0 ? "; solvable by Burnside's theorem, cited" : "")
          << ")";
      c << "; no group of order " << last.order_before << " is a quotient of T"
        << last.type.to_string() << " (cited, not verified)";
      e.conclusion = c.str();
    } else {
      std::ostringstream c;
      if (e.common_ab.empty())
        c << "G^ab is trivial, so G is perfect; excluded by the perfect-group database (cited)";
      else
        c << "G^ab is a quotient of " << group_string(e.common_ab)
          << "; excluded in the literature by the same derived-series method (cited, not "
             "verified)";
      e.conclusion = c.str();
    }
    report.entries.push_back(std::move(e));
  }
  report.cited_facts = {
      "perfect groups of order > 2000 admitting these types are excluded by the perfect-group "
      "database",
      "T(2,3,8)' = T(3,3,4) and T(3,3,4)' = T(4,4,4)",
      "groups of order 2^8 3^2 are solvable (Burnside)",
      "none of the 1090235 groups of order 768 is a quotient of T(4,4,4) (not verified here)",
  };
  return report;
}

std::string format_exceptional_report(const ExceptionalReport& report) {
  std::ostringstream out;
  out << "# order  T1  T2  T1^ab  T2^ab  common\n";
  for (const auto& e : report.entries) {
    out << e.triple.group_order << "  " << e.triple.t1.type.to_string() << "  "
        << e.triple.t2.type.to_string() << "  " << group_string(e.ab1) << "  "
        << group_string(e.ab2) << "  " << group_string(e.common_ab) << '\n';
    for (const auto& s : e.chain) {
      out << "    T" << s.type.to_string() << "^ab = " << group_string(s.abelianization)
          << ", |G^(k)| = " << s.order_before;
      if (s.order_after) out << " -> " << s.order_after;
      out << '\n';
    }
    out << "    " << e.conclusion << '\n';
  }
  out << "# " << report.entries.size() << " exceptional triples\n";
  for (const auto& t : report.pruned_by_bounds)
    out << "# removed by the automorphism bound table: " << t.group_order << "  "
        << t.t1.type.to_string() << "  " << t.t2.type.to_string() << '\n';
  for (const auto& c : report.cited_facts) out << "# cited: " << c << '\n';
  return out.str();
}

}  // namespace isoprod

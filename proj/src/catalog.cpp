#include "isoprod/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "embedded_data.hpp"

namespace isoprod {

std::string GroupId::to_string() const {
  return "<" + std::to_string(order) + "," + std::to_string(number) + ">";
}

CatalogParseError::CatalogParseError(std::string source, int line, int column,
                                     const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::optional<long long> to_int(std::string_view s) {
  s = trim(s);
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// Splits "(1,2)(3,4), (1,3)" at commas outside parentheses.
std::vector<std::string_view> split_permutations(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

std::string word_to_string(const std::vector<int>& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '*';
    s += 'n' + std::to_string(w[i] + 1);
  }
  return s;
}

std::string join_permutations(const PermConstruction& p) {
  std::string s;
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (i) s += ", ";
    s += p.generators[i].to_cycle_string();
  }
  return s;
}

class Parser {
 public:
  Parser(std::string_view text, std::string source)
      : text_(text), source_(std::move(source)) {}

  std::vector<GroupDefinition> run();

 private:
  [[noreturn]] void fail(std::string_view at, const std::string& what) const {
    int column = 1;
    if (at.data() >= line_.data() && at.data() <= line_.data() + line_.size())
      column = static_cast<int>(at.data() - line_.data()) + 1;
    throw CatalogParseError(source_, lineno_, column, what);
  }

  void parse_field(GroupDefinition& def, bool& has_construction, std::string_view body);
  std::vector<int> parse_word(std::string_view w) const;
  GroupFingerprint parse_fingerprint(std::string_view body) const;
  void require_known(std::string_view key) const {
    if (!known_.count(std::string(key)))
      fail(key, "reference to undefined group '" + std::string(key) + "'");
  }
  void set_construction(GroupDefinition& def, bool& has, Construction c,
                        std::string_view at) const {
    if (has) fail(at, "group '" + def.key + "' has more than one construction");
    def.construction = std::move(c);
    has = true;
  }

  std::string_view text_;
  std::string source_;
  std::string_view line_;
  int lineno_ = 0;
  std::set<std::string> known_;
};

std::vector<int> Parser::parse_word(std::string_view w) const {
  w = trim(w);
  std::vector<int> out;
  if (w == "1") return out;
  for (auto factor : split(w, '*')) {
    auto caret = factor.find('^');
    auto base = trim(factor.substr(0, caret));
    if (base.size() < 2 || base[0] != 'n') fail(base, "expected 'nK' in action word");
    auto k = to_int(base.substr(1));
    if (!k || *k < 1) fail(base, "bad generator index");
    long long e = 1;
    if (caret != std::string_view::npos) {
      auto ev = to_int(factor.substr(caret + 1));
      if (!ev || *ev < 0) fail(factor, "bad exponent");
      e = *ev;
    }
    out.insert(out.end(), e, static_cast<int>(*k - 1));
  }
  return out;
}

GroupFingerprint Parser::parse_fingerprint(std::string_view body) const {
  GroupFingerprint f;
  bool seen_order = false, seen_abelian = false, seen_classes = false, seen_orders = false;
  std::size_t pos = 0;
  while (pos < body.size()) {
    while (pos < body.size() && is_space(body[pos])) ++pos;
    if (pos >= body.size()) break;
    std::size_t end = pos;
    while (end < body.size() && !is_space(body[end])) ++end;
    std::string_view item = body.substr(pos, end - pos);
    pos = end;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) fail(item, "expected key=value in fingerprint");
    auto key = item.substr(0, eq);
    auto value = item.substr(eq + 1);
    if (key == "order") {
      auto v = to_int(value);
      if (!v || *v < 1) fail(value, "bad order");
      f.order = static_cast<std::size_t>(*v);
      seen_order = true;
    } else if (key == "abelian") {
      if (value.size() < 2 || value.front() != '[' || value.back() != ']')
        fail(value, "abelian invariants must be written [a,b,...]");
      auto inner = trim(value.substr(1, value.size() - 2));
      if (!inner.empty())
        for (auto part : split(inner, ',')) {
          auto v = to_int(part);
          if (!v || *v < 2) fail(part, "bad invariant factor");
          f.abelian_invariants.push_back(*v);
        }
      seen_abelian = true;
    } else if (key == "classes") {
      auto v = to_int(value);
      if (!v || *v < 1) fail(value, "bad class count");
      f.class_count = static_cast<std::size_t>(*v);
      seen_classes = true;
    } else if (key == "orders") {
      for (auto part : split(value, ',')) {
        auto colon = part.find(':');
        auto k = to_int(part.substr(0, colon));
        auto c = colon == std::string_view::npos ? std::nullopt : to_int(part.substr(colon + 1));
        if (!k || !c || *k < 1 || *c < 1) fail(part, "expected order:count");
        f.order_histogram[static_cast<int>(*k)] = static_cast<std::size_t>(*c);
      }
      seen_orders = true;
    } else {
      fail(key, "unknown fingerprint field '" + std::string(key) + "'");
    }
  }
  if (!(seen_order && seen_abelian && seen_classes && seen_orders))
    fail(body, "fingerprint needs order, abelian, classes and orders");
  return f;
}

void Parser::parse_field(GroupDefinition& def, bool& has_construction,
                         std::string_view body) {
  std::size_t sp = 0;
  while (sp < body.size() && !is_space(body[sp]) && body[sp] != ':') ++sp;
  std::string_view kw = body.substr(0, sp);
  std::string_view rest = trim(body.substr(sp));
  // "product: A x B" is accepted as well as "product A x B".
  if (!rest.empty() && rest.front() == ':' && kw != "perm" && kw != "pc")
    rest = trim(rest.substr(1));

  if (kw == "name") {
    if (rest.empty()) fail(body, "empty name");
    def.name = std::string(rest);
  } else if (kw == "id") {
    auto parts = split(rest, ',');
    auto a = parts.size() == 2 ? to_int(parts[0]) : std::nullopt;
    auto b = parts.size() == 2 ? to_int(parts[1]) : std::nullopt;
    if (!a || !b || *a < 1 || *b < 1) fail(rest, "expected 'id <order>,<number>'");
    def.id = GroupId{static_cast<int>(*a), static_cast<int>(*b)};
  } else if (kw == "perm") {
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) fail(rest, "expected 'perm <degree>: <cycles>, ...'");
    auto degree = to_int(rest.substr(0, colon));
    if (!degree || *degree < 1 || *degree > 65535) fail(rest, "bad degree");
    PermConstruction p;
    p.degree = static_cast<int>(*degree);
    auto list = trim(rest.substr(colon + 1));
    if (!list.empty())
      for (auto text : split_permutations(list)) {
        try {
          p.generators.push_back(parse_permutation(p.degree, text));
        } catch (const std::invalid_argument& e) {
          fail(text, e.what());
        }
      }
    set_construction(def, has_construction, std::move(p), body);
  } else if (kw == "pc") {
    auto colon = rest.find(':');
    auto n = to_int(rest.substr(0, colon));
    if (!n || *n < 0 || *n > 32) fail(rest, "expected 'pc <n>: <relations>'");
    auto relations = colon == std::string_view::npos ? std::string_view{} : rest.substr(colon + 1);
    try {
      set_construction(def, has_construction,
                       PcConstruction{PcPresentation::parse(static_cast<int>(*n), relations)},
                       body);
    } catch (const std::invalid_argument& e) {
      fail(relations, e.what());
    }
  } else if (kw == "unitriangular") {
    std::istringstream in{std::string(rest)};
    int n = 0, q = 0;
    if (!(in >> n >> q) || n < 2 || q < 2) fail(rest, "expected 'unitriangular <n> <q>'");
    set_construction(def, has_construction, UnitriangularConstruction{n, q}, body);
  } else if (kw == "product") {
    ProductConstruction p;
    std::istringstream in{std::string(rest)};
    std::string tok;
    bool expect_factor = true;
    while (in >> tok) {
      if (expect_factor) {
        auto at = rest.substr(rest.find(tok), tok.size());
        require_known(at);
        p.factors.push_back(tok);
      } else if (tok != "x") {
        fail(rest, "expected 'x' between product factors");
      }
      expect_factor = !expect_factor;
    }
    if (p.factors.size() < 2 || expect_factor) fail(rest, "expected 'product A x B [x C ...]'");
    set_construction(def, has_construction, std::move(p), body);
  } else if (kw == "semidirect") {
    auto sep = rest.find("x|");
    if (sep == std::string_view::npos) fail(rest, "expected 'semidirect N x| H'");
    SemidirectConstruction s;
    auto n = trim(rest.substr(0, sep));
    auto h = trim(rest.substr(sep + 2));
    require_known(n);
    require_known(h);
    s.normal = std::string(n);
    s.acting = std::string(h);
    set_construction(def, has_construction, std::move(s), body);
  } else if (kw == "act") {
    auto* s = has_construction ? std::get_if<SemidirectConstruction>(&def.construction) : nullptr;
    if (!s) fail(body, "'act' must follow a semidirect construction");
    std::vector<std::vector<int>> images;
    for (auto w : split(rest, ',')) images.push_back(parse_word(w));
    s->action.push_back(std::move(images));
  } else if (kw == "fingerprint") {
    def.fingerprint = parse_fingerprint(rest);
  } else {
    fail(kw, "unknown field or construction kind '" + std::string(kw) + "'");
  }
}

std::vector<GroupDefinition> Parser::run() {
  std::vector<GroupDefinition> out;
  std::optional<GroupDefinition> current;
  bool has_construction = false;
  std::vector<std::string> pending_comments;

  std::string_view rest = text_;
  while (!rest.empty() || lineno_ == 0) {
    auto nl = rest.find('\n');
    line_ = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++lineno_;
    if (!line_.empty() && line_.back() == '\r') line_.remove_suffix(1);

    std::string_view body = trim(line_);
    if (body.empty()) {
      if (!current) pending_comments.clear();
      if (rest.empty()) break;
      continue;
    }
    if (body.front() == '#') {
      if (!current) pending_comments.emplace_back(trim(body.substr(1)));
      if (rest.empty()) break;
      continue;
    }

    if (body.substr(0, 6) == "group " || body == "group") {
      if (current) fail(body, "missing 'end' before new group");
      auto key = trim(body.substr(5));
      if (key.empty() || key.find_first_of(" \t") != std::string_view::npos)
        fail(body, "expected 'group <key>'");
      if (known_.count(std::string(key))) fail(key, "duplicate group key '" + std::string(key) + "'");
      current.emplace();
      current->key = std::string(key);
      current->comments = std::move(pending_comments);
      pending_comments.clear();
      has_construction = false;
    } else if (body == "end") {
      if (!current) fail(body, "'end' without 'group'");
      if (!has_construction) fail(body, "group '" + current->key + "' has no construction");
      if (current->name.empty()) current->name = current->key;
      if (auto* s = std::get_if<SemidirectConstruction>(&current->construction);
          s && s->action.empty())
        fail(body, "semidirect product without 'act' lines");
      known_.insert(current->key);
      out.push_back(std::move(*current));
      current.reset();
    } else {
      if (!current) fail(body, "field outside a group block");
      parse_field(*current, has_construction, body);
    }
    if (rest.empty()) break;
  }
  if (current) fail(line_, "unterminated group '" + current->key + "'");
  return out;
}

// Word in the generators of `g` evaluated left to right.
Elem evaluate(const FiniteGroup& g, const std::vector<int>& word) {
  Elem x = g.identity();
  for (int letter : word) {
    if (letter < 0 || static_cast<std::size_t>(letter) >= g.generators().size())
      throw std::invalid_argument("action word uses n" + std::to_string(letter + 1) +
                                  " but the normal factor has " +
                                  std::to_string(g.generators().size()) + " generators");
    x = g.mul(x, g.generators()[letter]);
  }
  return x;
}

}  // namespace

Permutation parse_permutation(int degree, std::string_view text) {
  text = trim(text);
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle notation");
    auto close = text.find(')', i);
    if (close == std::string_view::npos) throw std::invalid_argument("unclosed cycle");
    auto inner = trim(text.substr(i + 1, close - i - 1));
    std::vector<int> cycle;
    if (!inner.empty())
      for (auto p : split(inner, ',')) {
        auto v = to_int(p);
        if (!v) throw std::invalid_argument("bad point '" + std::string(p) + "'");
        cycle.push_back(static_cast<int>(*v));
      }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    i = close + 1;
  }
  if (text.empty()) throw std::invalid_argument("empty permutation");
  return Permutation::from_cycles(degree, cycles);
}

std::string format_fingerprint(const GroupFingerprint& f) {
  std::ostringstream out;
  out << "order=" << f.order << " abelian=[";
  for (std::size_t i = 0; i < f.abelian_invariants.size(); ++i)
    out << (i ? "," : "") << f.abelian_invariants[i];
  out << "] classes=" << f.class_count << " orders=";
  bool first = true;
  for (const auto& [k, c] : f.order_histogram) {
    out << (first ? "" : ",") << k << ':' << c;
    first = false;
  }
  return out.str();
}

Catalog Catalog::parse(std::string_view text, std::string source) {
  Catalog c;
  c.entries_ = Parser(text, std::move(source)).run();
  return c;
}

Catalog Catalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

Catalog Catalog::builtin() { return parse(embedded::kDefaultCatalog, "<builtin catalog>"); }

Catalog Catalog::open(const std::string& spec) {
  return spec == "default" ? builtin() : load(spec);
}

std::string Catalog::serialize() const {
  std::ostringstream out;
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const auto& def = entries_[e];
    if (e) out << '\n';
    for (const auto& c : def.comments) out << (c.empty() ? "#" : "# " + c) << '\n';
    out << "group " << def.key << '\n';
    if (def.name != def.key) out << "  name " << def.name << '\n';
    if (def.id) out << "  id " << def.id->order << ',' << def.id->number << '\n';
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, PermConstruction>) {
            out << "  perm " << c.degree << ": " << join_permutations(c) << '\n';
          } else if constexpr (std::is_same_v<T, PcConstruction>) {
            out << "  pc " << c.presentation.generator_count << ':';
            auto rel = c.presentation.relations_string();
            if (!rel.empty()) out << ' ' << rel;
            out << '\n';
          } else if constexpr (std::is_same_v<T, UnitriangularConstruction>) {
            out << "  unitriangular " << c.n << ' ' << c.q << '\n';
          } else if constexpr (std::is_same_v<T, ProductConstruction>) {
            out << "  product";
            for (std::size_t i = 0; i < c.factors.size(); ++i)
              out << (i ? " x " : " ") << c.factors[i];
            out << '\n';
          } else {
            out << "  semidirect " << c.normal << " x| " << c.acting << '\n';
            for (const auto& images : c.action) {
              out << "  act";
              for (std::size_t k = 0; k < images.size(); ++k)
                out << (k ? ", " : " ") << word_to_string(images[k]);
              out << '\n';
            }
          }
        },
        def.construction);
    if (def.fingerprint) out << "  fingerprint " << format_fingerprint(*def.fingerprint) << '\n';
    out << "end\n";
  }
  return out.str();
}

const GroupDefinition* Catalog::find(std::string_view query) const {
  query = trim(query);
  for (const auto& d : entries_)
    if (d.key == query) return &d;
  std::string_view q = query;
  if (q.size() >= 2 && q.front() == '<' && q.back() == '>') q = q.substr(1, q.size() - 2);
  if (auto parts = split(q, ','); parts.size() == 2) {
    auto a = to_int(parts[0]), b = to_int(parts[1]);
    if (a && b)
      for (const auto& d : entries_)
        if (d.id && d.id->order == *a && d.id->number == *b) return &d;
  }
  for (const auto& d : entries_)
    if (d.name == query) return &d;
  return nullptr;
}

std::shared_ptr<const FiniteGroup> Catalog::realize(std::string_view key) const {
  const GroupDefinition* def = nullptr;
  for (const auto& d : entries_)
    if (d.key == key) def = &d;
  if (!def) throw std::invalid_argument("no catalog entry '" + std::string(key) + "'");
  std::lock_guard lock(mutex_);
  return realize_locked(*def);
}

std::shared_ptr<const FiniteGroup> Catalog::realize_locked(const GroupDefinition& def) const {
  if (auto it = realized_.find(def.key); it != realized_.end()) return it->second;
  auto dependency = [&](const std::string& key) {
    for (const auto& d : entries_)
      if (d.key == key) return realize_locked(d);
    throw std::invalid_argument("no catalog entry '" + key + "'");
  };

  FiniteGroup g = std::visit(
      [&](const auto& c) -> FiniteGroup {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, PermConstruction>) {
          return from_permutation_generators(c.degree, c.generators);
        } else if constexpr (std::is_same_v<T, PcConstruction>) {
          return from_power_commutator(c.presentation);
        } else if constexpr (std::is_same_v<T, UnitriangularConstruction>) {
          return from_unitriangular(c.n, c.q);
        } else if constexpr (std::is_same_v<T, ProductConstruction>) {
          FiniteGroup acc = *dependency(c.factors[0]);
          for (std::size_t i = 1; i < c.factors.size(); ++i)
            acc = direct_product(acc, *dependency(c.factors[i]));
          return acc;
        } else {
          auto n = dependency(c.normal);
          auto h = dependency(c.acting);
          const auto& hgens = h->generators();
          if (c.action.size() != hgens.size())
            throw std::invalid_argument(def.key + ": " + std::to_string(c.action.size()) +
                                        " act lines for " + std::to_string(hgens.size()) +
                                        " generators of " + c.acting);
          // Automorphism of N for each generator of H, then for every
          // element along a breadth-first walk: act(x s) = act(x) o act(s).
          std::vector<std::vector<Elem>> gen_act;
          for (const auto& images_words : c.action) {
            if (images_words.size() != n->generators().size())
              throw std::invalid_argument(def.key + ": act line needs " +
                                          std::to_string(n->generators().size()) + " images");
            std::vector<Elem> images;
            for (const auto& w : images_words) images.push_back(evaluate(*n, w));
            auto map = extend_to_homomorphism(*n, n->generators(), *n, images);
            if (!map)
              throw std::invalid_argument(def.key + ": act line is not a homomorphism of " +
                                          c.normal);
            gen_act.push_back(std::move(*map));
          }
          std::vector<std::vector<Elem>> action(h->order());
          action[0].resize(n->order());
          for (std::size_t x = 0; x < n->order(); ++x) action[0][x] = Elem(x);
          std::vector<Elem> queue{0};
          for (std::size_t head = 0; head < queue.size(); ++head) {
            Elem x = queue[head];
            for (std::size_t i = 0; i < hgens.size(); ++i) {
              Elem y = h->mul(x, hgens[i]);
              if (!action[y].empty()) continue;
              action[y].resize(n->order());
              for (std::size_t m = 0; m < n->order(); ++m)
                action[y][m] = action[x][gen_act[i][m]];
              queue.push_back(y);
            }
          }
          return semidirect_product(*n, *h, action);
        }
      },
      def.construction);

  if (def.fingerprint) {
    auto got = fingerprint(g);
    if (!(got == *def.fingerprint))
      throw FingerprintMismatch(def.key + ": fingerprint " + format_fingerprint(got) +
                                " does not match catalog " +
                                format_fingerprint(*def.fingerprint));
  }
  if (def.id && g.order() != static_cast<std::size_t>(def.id->order))
    throw FingerprintMismatch(def.key + ": realized order " + std::to_string(g.order()) +
                              " but id claims " + def.id->to_string());
  auto ptr = std::make_shared<const FiniteGroup>(std::move(g));
  realized_.emplace(def.key, ptr);
  return ptr;
}

std::string export_gap(const FiniteGroup& g, const std::string& variable) {
  // Right regular representation: generator s acts by x -> x s on points
  // 1..|G|.
  std::ostringstream out;
  out << variable << " := Group(";
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<std::uint16_t> images(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) images[x] = g.mul(Elem(x), gens[i]);
    out << (i ? ",\n  " : "\n  ") << Permutation(std::move(images)).to_cycle_string();
  }
  if (gens.empty()) out << "()";
  out << ");\n";
  return out.str();
}

}  // namespace isoprod

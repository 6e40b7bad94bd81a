#include "isoprod/typesys.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "isoprod/smith.hpp"

namespace isoprod {

TypeTuple::TypeTuple(std::vector<int> orders) : orders_(std::move(orders)) {
  if (orders_.size() < 3)
    throw std::invalid_argument("a type needs at least three entries");
  std::sort(orders_.begin(), orders_.end());
  if (orders_.front() < 2)
    throw std::invalid_argument("type entries must be at least 2");
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("malformed type '" + std::string(whole) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

TypeTuple TypeTuple::parse(std::string_view text) {
  std::string_view body = trim(text);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']')
      throw std::invalid_argument("malformed type '" + std::string(text) + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<int> orders;
  while (!body.empty()) {
    auto comma = body.find(',');
    std::string_view item = trim(body.substr(0, comma));
    body = comma == std::string_view::npos ? std::string_view{}
                                           : body.substr(comma + 1);
    auto caret = item.find('^');
    int base = parse_int(item.substr(0, caret), text);
    int count = caret == std::string_view::npos
                    ? 1
                    : parse_int(item.substr(caret + 1), text);
    if (count < 1 || count > 64)
      throw std::invalid_argument("bad exponent in type '" +
                                  std::string(text) + "'");
    orders.insert(orders.end(), count, base);
  }
  return TypeTuple(std::move(orders));
}

std::string TypeTuple::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(orders_[i]);
  }
  return s + "]";
}

std::string TypeTuple::to_compact_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < orders_.size();) {
    std::size_t j = i;
    while (j < orders_.size() && orders_[j] == orders_[i]) ++j;
    if (i) s += ',';
    s += std::to_string(orders_[i]);
    if (j - i > 1) s += '^' + std::to_string(j - i);
    i = j;
  }
  return s + "]";
}

bool TypeTuple::all_equal_to(int m) const {
  return std::all_of(orders_.begin(), orders_.end(),
                     [m](int x) { return x == m; });
}

bool operator<(const TypeTuple& a, const TypeTuple& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.orders_ < b.orders_;
}

Rational theta(const TypeTuple& t) {
  Rational sum(-2);
  for (int m : t.orders()) sum += Rational(1) - Rational(1, m);
  return sum;
}

std::optional<int> alpha(const TypeTuple& t) {
  Rational th = theta(t);
  if (th <= 0) return std::nullopt;
  Rational a = Rational(4) / th;
  if (a.denominator() != 1) return std::nullopt;
  return static_cast<int>(a.numerator());
}

std::optional<AdmissibleType> admit(const TypeTuple& t) {
  auto a = alpha(t);
  if (!a) return std::nullopt;
  for (int m : t.orders())
    if (*a % m != 0) return std::nullopt;
  return AdmissibleType{t, theta(t), *a};
}

std::vector<AdmissibleType> enumerate_admissible_types(
    const TypeSearchBounds& bounds) {
  std::vector<AdmissibleType> out;
  std::vector<int> current;

  // Nondecreasing tuples of a fixed length r with entries in [2, cap].
  // m_r | alpha gives Theta <= 4 / m_r; appending entries raises the left
  // side and lowers the right, so a prefix violating it is dead.
  std::function<void(int, int, int, Rational)> extend = [&](int r, int lo, int cap,
                                                             Rational partial) {
    if (!current.empty() && partial - 2 > Rational(4, current.back())) return;
    if (static_cast<int>(current.size()) == r) {
      if (auto a = admit(TypeTuple(current))) out.push_back(*a);
      return;
    }
    for (int m = lo; m <= cap; ++m) {
      current.push_back(m);
      extend(r, m, cap, partial + 1 - Rational(1, m));
      current.pop_back();
    }
  };

  for (int r = 3; r <= bounds.max_length; ++r) {
    int cap = bounds.max_entry;
    if (bounds.use_proved_per_length && r >= 4) cap = std::min(cap, 10 / (r - 3));
    if (cap < 2) continue;
    extend(r, 2, cap, Rational(0));
  }

  std::sort(out.begin(), out.end(),
            [](const AdmissibleType& a, const AdmissibleType& b) {
              if (a.alpha != b.alpha) return a.alpha > b.alpha;
              return a.type < b.type;
            });
  return out;
}

std::optional<int> genus_from_type(const AdmissibleType& t,
                                   std::int64_t group_order) {
  if (group_order <= 0) return std::nullopt;
  Rational twice_g_minus_2 = t.theta * Rational(group_order);
  if (twice_g_minus_2 <= 0 || twice_g_minus_2.denominator() != 1 ||
      twice_g_minus_2.numerator() % 2 != 0)
    return std::nullopt;
  return static_cast<int>(twice_g_minus_2.numerator() / 2 + 1);
}

AutomorphismBoundTable AutomorphismBoundTable::parse(std::string_view text) {
  AutomorphismBoundTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    int genus = 0;
    std::int64_t bound = 0;
    if (!(fields >> genus)) continue;
    if (!(fields >> bound) || genus < 2 || bound <= 0)
      throw std::runtime_error("automorphism bound table line " +
                               std::to_string(lineno) +
                               ": expected 'genus max_order'");
    table.bounds_[genus] = bound;
  }
  return table;
}

AutomorphismBoundTable AutomorphismBoundTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bound table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::int64_t AutomorphismBoundTable::max_order(int genus) const {
  auto it = bounds_.find(genus);
  if (it != bounds_.end()) return it->second;
  return 84LL * (genus - 1);
}

std::vector<CandidateTriple> candidate_triples(
    const std::vector<AdmissibleType>& types, const TripleFilter& filter) {
  std::vector<CandidateTriple> out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    for (std::size_t j = i; j < types.size(); ++j) {
      const std::int64_t product =
          static_cast<std::int64_t>(types[i].alpha) * types[j].alpha;
      if (product % 2 != 0) continue;
      const std::int64_t m = product / 2;
      if (m > filter.max_order) continue;

      CandidateTriple c{m, types[i], types[j]};
      if (c.t2.type < c.t1.type) std::swap(c.t1, c.t2);

      bool keep = true;
      for (int g : {c.g1(), c.g2()}) {
        if (filter.hurwitz_bound && m > 84LL * (g - 1)) keep = false;
        if (filter.bound_table && g >= 2 && g <= 48 &&
            m > filter.bound_table->max_order(g))
          keep = false;
      }
      if (keep) out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CandidateTriple& a, const CandidateTriple& b) {
              if (a.group_order != b.group_order)
                return a.group_order > b.group_order;
              if (!(a.t1.type == b.t1.type)) return a.t1.type < b.t1.type;
              return a.t2.type < b.t2.type;
            });
  return out;
}

std::vector<CandidateTriple> candidate_triples(const TripleFilter& filter) {
  return candidate_triples(enumerate_admissible_types(), filter);
}

std::vector<std::int64_t> polygonal_abelianization(const TypeTuple& t) {
  const int r = t.length();
  IntMatrix relations;
  for (int i = 0; i < r; ++i) {
    std::vector<std::int64_t> row(r, 0);
    row[i] = t[i];
    relations.push_back(std::move(row));
  }
  relations.emplace_back(r, 1);
  return cokernel_invariants(relations, r);
}

std::string format_invariants(const std::vector<std::int64_t>& factors) {
  if (factors.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += " x ";
    s += factors[i] == 0 ? std::string("Z") : "Z" + std::to_string(factors[i]);
  }
  return s;
}

}  // namespace isoprod

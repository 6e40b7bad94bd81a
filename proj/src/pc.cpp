#include "isoprod/pc.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace isoprod {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

int parse_number(std::string_view s, std::string_view context) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument("bad number '" + std::string(s) + "' in '" +
                                std::string(context) + "'");
  return v;
}

// "g7" -> 6
int parse_generator(std::string_view s, int n, std::string_view context) {
  s = trim(s);
  if (s.size() < 2 || s[0] != 'g')
    throw std::invalid_argument("expected generator 'gK' in '" +
                                std::string(context) + "'");
  int k = parse_number(s.substr(1), context);
  if (k < 1 || k > n)
    throw std::invalid_argument("generator g" + std::to_string(k) +
                                " out of range in '" + std::string(context) + "'");
  return k - 1;
}

// "g2*g3^2", "1" or "id"
PcWord parse_word(std::string_view s, int n, std::string_view context) {
  s = trim(s);
  PcWord word;
  if (s == "1" || s == "id") return word;
  while (!s.empty()) {
    auto star = s.find('*');
    std::string_view factor = trim(s.substr(0, star));
    s = star == std::string_view::npos ? std::string_view{} : s.substr(star + 1);
    auto caret = factor.find('^');
    int g = parse_generator(factor.substr(0, caret), n, context);
    int e = caret == std::string_view::npos
                ? 1
                : parse_number(trim(factor.substr(caret + 1)), context);
    if (e < 0) throw std::invalid_argument("negative exponent in '" +
                                           std::string(context) + "'");
    word.insert(word.end(), e, g);
  }
  return word;
}

std::string word_string(const PcWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!s.empty()) s += '*';
    s += 'g' + std::to_string(w[i] + 1);
    if (j - i > 1) s += '^' + std::to_string(j - i);
    i = j;
  }
  return s;
}

}  // namespace

PcPresentation PcPresentation::parse(int n, std::string_view relations) {
  if (n < 0) throw std::invalid_argument("negative generator count");
  PcPresentation pres(n);
  std::string_view rest = relations;
  while (!rest.empty()) {
    auto semi = rest.find(';');
    std::string_view rel = trim(rest.substr(0, semi));
    rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
    if (rel.empty()) continue;

    auto eq = rel.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("relation without '=': '" + std::string(rel) + "'");
    std::string_view lhs = trim(rel.substr(0, eq));
    PcWord rhs = parse_word(rel.substr(eq + 1), n, rel);

    auto caret = lhs.find('^');
    if (caret == std::string_view::npos)
      throw std::invalid_argument("relation must be gI^p or gI^gJ: '" +
                                  std::string(rel) + "'");
    int i = parse_generator(lhs.substr(0, caret), n, rel);
    std::string_view exponent = trim(lhs.substr(caret + 1));
    if (!exponent.empty() && exponent[0] == 'g') {
      int j = parse_generator(exponent, n, rel);
      if (j >= i)
        throw std::invalid_argument("conjugation relation needs j < i: '" +
                                    std::string(rel) + "'");
      for (int g : rhs)
        if (g <= j)
          throw std::invalid_argument("right-hand side of '" + std::string(rel) +
                                      "' must use generators after g" +
                                      std::to_string(j + 1));
      pres.conjugates[{i, j}] = std::move(rhs);
    } else {
      int p = parse_number(exponent, rel);
      if (p < 2) throw std::invalid_argument("relative order must be >= 2");
      for (int g : rhs)
        if (g <= i)
          throw std::invalid_argument("right-hand side of '" + std::string(rel) +
                                      "' must use later generators only");
      pres.relative_orders[i] = p;
      pres.powers[i] = std::move(rhs);
    }
  }
  return pres;
}

std::string PcPresentation::relations_string() const {
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << "; ";
    first = false;
  };
  for (int i = 0; i < generator_count; ++i) {
    auto it = powers.find(i);
    bool nontrivial = it != powers.end() && !it->second.empty();
    if (relative_orders[i] != 2 || nontrivial) {
      sep();
      out << 'g' << i + 1 << '^' << relative_orders[i] << '='
          << (it == powers.end() ? "1" : word_string(it->second));
    }
  }
  for (const auto& [ij, w] : conjugates) {
    if (w == PcWord{ij.first}) continue;
    sep();
    out << 'g' << ij.first + 1 << "^g" << ij.second + 1 << '=' << word_string(w);
  }
  return out.str();
}

PcCollector::PcCollector(PcPresentation presentation)
    : pres_(std::move(presentation)) {
  for (int p : pres_.relative_orders) {
    order_ *= static_cast<std::size_t>(p);
    if (order_ > (std::size_t{1} << 32))
      throw std::invalid_argument("pc presentation order too large");
  }
  step_budget_ = 64 * order_ * static_cast<std::size_t>(pres_.generator_count + 1);
}

void PcCollector::multiply_letter(Exponents& a, int j) const {
  std::size_t steps = 0;
  // Letters still to be multiplied on the right; the back is next.
  std::vector<int> pending{j};
  std::vector<int> word;
  while (!pending.empty()) {
    if (++steps > step_budget_)
      throw PcInconsistent("collection does not terminate; presentation is inconsistent");
    const int g = pending.back();
    pending.pop_back();

    // prefix * tail * g_g = prefix * g_g * tail^{g_g}
    word.clear();
    if (++a[g] == pres_.relative_orders[g]) {
      a[g] = 0;
      auto it = pres_.powers.find(g);
      if (it != pres_.powers.end())
        word.insert(word.end(), it->second.begin(), it->second.end());
    }
    for (int k = g + 1; k < pres_.generator_count; ++k) {
      auto it = pres_.conjugates.find({k, g});
      for (int e = 0; e < a[k]; ++e) {
        if (it == pres_.conjugates.end())
          word.push_back(k);
        else
          word.insert(word.end(), it->second.begin(), it->second.end());
      }
      a[k] = 0;
    }
    pending.insert(pending.end(), word.rbegin(), word.rend());
  }
}

PcCollector::Exponents PcCollector::multiply(const Exponents& a,
                                             const Exponents& b) const {
  Exponents out = a;
  for (int j = 0; j < pres_.generator_count; ++j)
    for (int e = 0; e < b[j]; ++e) multiply_letter(out, j);
  return out;
}

std::size_t PcCollector::id_of(const Exponents& e) const {
  std::size_t id = 0;
  for (int i = 0; i < pres_.generator_count; ++i)
    id = id * static_cast<std::size_t>(pres_.relative_orders[i]) + e[i];
  return id;
}

PcCollector::Exponents PcCollector::exponents_of(std::size_t id) const {
  Exponents e(pres_.generator_count, 0);
  for (int i = pres_.generator_count - 1; i >= 0; --i) {
    e[i] = static_cast<int>(id % pres_.relative_orders[i]);
    id /= pres_.relative_orders[i];
  }
  return e;
}

FiniteGroup from_power_commutator(const PcPresentation& presentation,
                                  std::size_t order_cap) {
  PcCollector collector(presentation);
  const std::size_t order = collector.group_order();
  if (order > order_cap || order > kCayleyTableLimit)
    throw OrderCapExceeded("pc group of order " + std::to_string(order) +
                           " exceeds the table cap");

  std::vector<PcCollector::Exponents> elems(order);
  for (std::size_t id = 0; id < order; ++id) elems[id] = collector.exponents_of(id);

  std::vector<Elem> table(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      table[a * order + b] =
          static_cast<Elem>(collector.id_of(collector.multiply(elems[a], elems[b])));

  std::vector<Elem> gens;
  for (int i = 0; i < presentation.generator_count; ++i) {
    PcCollector::Exponents e(presentation.generator_count, 0);
    e[i] = 1;
    gens.push_back(static_cast<Elem>(collector.id_of(e)));
  }

  // (xy)g = x(yg) for all x, y and generators g implies associativity.
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y)
      for (Elem g : gens) {
        Elem lhs = table[std::size_t(table[x * order + y]) * order + g];
        Elem rhs = table[x * order + table[y * order + g]];
        if (lhs != rhs)
          throw PcInconsistent("collection is not associative; presentation is inconsistent");
      }

  try {
    return FiniteGroup(order, std::move(table), std::move(gens));
  } catch (const std::invalid_argument& e) {
    throw PcInconsistent(std::string("collected table is not a group: ") + e.what());
  }
}

}  // namespace isoprod

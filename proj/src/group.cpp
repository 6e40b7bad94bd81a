#include "isoprod/group.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

namespace isoprod {

Permutation::Permutation(std::vector<std::uint16_t> images)
    : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x])
      throw std::invalid_argument("not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<std::uint16_t> images(degree);
  std::iota(images.begin(), images.end(), std::uint16_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(
    int degree, const std::vector<std::vector<int>>& cycles) {
  std::vector<std::uint16_t> images(degree);
  std::iota(images.begin(), images.end(), std::uint16_t{0});
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int from = cycle[i];
      int to = cycle[(i + 1) % cycle.size()];
      if (from < 1 || from > degree || to < 1 || to > degree)
        throw std::invalid_argument("cycle point " + std::to_string(from) +
                                    " outside 1.." + std::to_string(degree));
      if (used[from - 1])
        throw std::invalid_argument("point " + std::to_string(from) +
                                    " repeated in cycle notation");
      used[from - 1] = true;
      images[from - 1] = static_cast<std::uint16_t>(to - 1);
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  std::vector<std::uint16_t> out(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out[x] = rhs.images_[images_[x]];
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint16_t> out(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x)
    out[images_[x]] = static_cast<std::uint16_t>(x);
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::string Permutation::to_cycle_string() const {
  std::string s;
  std::vector<bool> done(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (done[start] || images_[start] == start) continue;
    s += '(';
    std::size_t x = start;
    bool first = true;
    while (!done[x]) {
      done[x] = true;
      if (!first) s += ',';
      s += std::to_string(x + 1);
      first = false;
      x = images_[x];
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return h;
}

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Elem> table,
                         std::vector<Elem> generators)
    : order_(order), table_(std::move(table)), generators_(std::move(generators)) {
  if (order_ == 0 || order_ > std::numeric_limits<Elem>::max())
    throw std::invalid_argument("group order out of range");
  if (table_.size() != order_ * order_)
    throw std::invalid_argument("Cayley table has the wrong size");
  for (auto x : table_)
    if (x >= order_) throw std::invalid_argument("Cayley table entry out of range");
  for (std::size_t a = 0; a < order_; ++a)
    if (table_[a] != a || table_[a * order_] != a)
      throw std::invalid_argument("element 0 is not the identity");
  for (auto g : generators_)
    if (g >= order_) throw std::invalid_argument("generator id out of range");
  derive_inverses_and_orders();

  std::vector<bool> reached(order_, false);
  std::vector<Elem> queue{0};
  reached[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Elem gen : generators_) {
      Elem y = mul(queue[head], gen);
      if (!reached[y]) {
        reached[y] = true;
        queue.push_back(y);
      }
    }
  if (queue.size() != order_)
    throw std::invalid_argument("listed generators do not generate the group");
}

void FiniteGroup::derive_inverses_and_orders() {
  inverse_.assign(order_, 0);
  element_order_.assign(order_, 1);
  for (std::size_t a = 1; a < order_; ++a) {
    const Elem x = static_cast<Elem>(a);
    Elem power = x, previous = 0;
    int k = 1;
    while (power != 0) {
      previous = power;
      power = mul(power, x);
      if (++k > static_cast<int>(order_))
        throw std::invalid_argument("element power never reaches the identity");
    }
    element_order_[a] = k;
    inverse_[a] = previous;  // x^(k-1)
  }
  for (std::size_t a = 0; a < order_; ++a) {
    Elem x = static_cast<Elem>(a);
    if (mul(inverse_[a], x) != 0)
      throw std::invalid_argument("inverse law fails in table");
  }
}

Elem FiniteGroup::mul_by_action(Elem a, Elem b) const {
  const auto& p = perms_->elements;
  return perms_->index.at(p[a] * p[b]);
}

Elem FiniteGroup::power(Elem a, std::int64_t k) const {
  const std::int64_t n = element_order_[a];
  k %= n;
  if (k < 0) k += n;
  Elem result = 0;
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::vector<Elem> FiniteGroup::elements_of_order(int k) const {
  std::vector<Elem> out;
  for (std::size_t a = 0; a < order_; ++a)
    if (element_order_[a] == k) out.push_back(static_cast<Elem>(a));
  return out;
}

std::map<int, std::size_t> FiniteGroup::order_histogram() const {
  std::map<int, std::size_t> hist;
  for (int o : element_order_) ++hist[o];
  return hist;
}

bool FiniteGroup::check_associativity() const {
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b) {
      Elem ab = mul(Elem(a), Elem(b));
      for (std::size_t c = 0; c < order_; ++c)
        if (mul(ab, Elem(c)) != mul(Elem(a), mul(Elem(b), Elem(c)))) return false;
    }
  return true;
}

bool FiniteGroup::check_identity_and_inverses() const {
  for (std::size_t a = 0; a < order_; ++a) {
    Elem x = static_cast<Elem>(a);
    if (mul(0, x) != x || mul(x, 0) != x) return false;
    if (mul(x, inv(x)) != 0 || mul(inv(x), x) != 0) return false;
  }
  return true;
}

FiniteGroup from_permutation_generators(int degree,
                                        std::span<const Permutation> generators,
                                        std::size_t order_cap) {
  for (const auto& g : generators)
    if (g.degree() != degree)
      throw std::invalid_argument("generator degree does not match");

  auto real = std::make_shared<FiniteGroup::PermRealization>();
  auto& elems = real->elements;
  auto& index = real->index;
  const std::size_t cap =
      std::min<std::size_t>(order_cap, std::numeric_limits<Elem>::max());

  elems.push_back(Permutation::identity(degree));
  index.emplace(elems.back(), 0);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : generators) {
      Permutation p = elems[head] * g;
      if (index.count(p)) continue;
      if (elems.size() >= cap)
        throw OrderCapExceeded("permutation group exceeds order cap " +
                               std::to_string(cap));
      index.emplace(p, static_cast<Elem>(elems.size()));
      elems.push_back(std::move(p));
    }
  }

  const std::size_t order = elems.size();
  std::vector<Elem> gens;
  for (const auto& g : generators) gens.push_back(index.at(g));

  FiniteGroup group;
  group.order_ = order;
  group.generators_ = std::move(gens);
  group.perms_ = real;
  group.table_.clear();
  if (order <= kCayleyTableLimit) {
    std::vector<Elem> table(order * order);
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b)
        table[a * order + b] = index.at(elems[a] * elems[b]);
    group.table_ = std::move(table);
  }
  group.derive_inverses_and_orders();
  return group;
}

FiniteGroup from_unitriangular(int n, int q) {
  if (n < 1 || q < 2) throw std::invalid_argument("bad unitriangular parameters");
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) throw std::invalid_argument("field size must be prime");

  // Strictly upper entries (i, j), i < j, in row-major order.
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);

  std::size_t order = 1;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    order *= q;
    if (order > kCayleyTableLimit)
      throw std::invalid_argument("unitriangular group too large for a table");
  }

  auto decode = [&](std::size_t id) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    for (std::size_t s = slots.size(); s-- > 0;) {
      m[slots[s].first][slots[s].second] = static_cast<int>(id % q);
      id /= q;
    }
    return m;
  };
  auto encode = [&](const std::vector<std::vector<int>>& m) {
    std::size_t id = 0;
    for (auto [i, j] : slots) id = id * q + m[i][j];
    return static_cast<Elem>(id);
  };

  std::vector<std::vector<std::vector<int>>> mats;
  for (std::size_t id = 0; id < order; ++id) mats.push_back(decode(id));

  std::vector<Elem> table(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          int sum = 0;
          for (int k = i; k <= j; ++k) sum += mats[a][i][k] * mats[b][k][j];
          c[i][j] = sum % q;
        }
      table[a * order + b] = encode(c);
    }

  // Elementary matrices I + E_{i,i+1} generate.
  std::vector<Elem> gens;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<std::vector<int>> e = decode(0);
    e[i][i + 1] = 1;
    gens.push_back(encode(e));
  }
  return FiniteGroup(order, std::move(table), std::move(gens));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t ng = g.order(), nh = h.order();
  const std::size_t order = ng * nh;
  if (order > kCayleyTableLimit)
    throw std::invalid_argument("direct product too large for a table");
  std::vector<Elem> table(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      Elem x = g.mul(Elem(a / nh), Elem(b / nh));
      Elem y = h.mul(Elem(a % nh), Elem(b % nh));
      table[a * order + b] = static_cast<Elem>(x * nh + y);
    }
  std::vector<Elem> gens;
  for (auto x : g.generators()) gens.push_back(static_cast<Elem>(x * nh));
  for (auto y : h.generators()) gens.push_back(y);
  return FiniteGroup(order, std::move(table), std::move(gens));
}

FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h,
                               const std::vector<std::vector<Elem>>& action) {
  const std::size_t nn = n.order(), nh = h.order();
  if (action.size() != nh)
    throw std::invalid_argument("semidirect action needs one map per element of H");
  for (const auto& phi : action) {
    if (phi.size() != nn)
      throw std::invalid_argument("semidirect action map has wrong size");
    std::vector<bool> hit(nn, false);
    for (auto x : phi) {
      if (x >= nn || hit[x])
        throw std::invalid_argument("semidirect action map is not bijective");
      hit[x] = true;
    }
    for (std::size_t a = 0; a < nn; ++a)
      for (std::size_t b = 0; b < nn; ++b)
        if (phi[n.mul(Elem(a), Elem(b))] != n.mul(phi[a], phi[b]))
          throw std::invalid_argument("semidirect action map is not multiplicative");
  }
  for (std::size_t x = 0; x < nh; ++x)
    for (std::size_t y = 0; y < nh; ++y) {
      const auto& composite = action[h.mul(Elem(x), Elem(y))];
      for (std::size_t a = 0; a < nn; ++a)
        if (composite[a] != action[x][action[y][a]])
          throw std::invalid_argument("semidirect action is not a homomorphism");
    }

  const std::size_t order = nn * nh;
  if (order > kCayleyTableLimit)
    throw std::invalid_argument("semidirect product too large for a table");
  std::vector<Elem> table(order * order);
  for (std::size_t a = 0; a < order; ++a) {
    const std::size_t h1 = a / nn, n1 = a % nn;
    for (std::size_t b = 0; b < order; ++b) {
      const std::size_t h2 = b / nn, n2 = b % nn;
      Elem nprod = n.mul(Elem(n1), action[h1][n2]);
      Elem hprod = h.mul(Elem(h1), Elem(h2));
      table[a * order + b] = static_cast<Elem>(hprod * nn + nprod);
    }
  }
  std::vector<Elem> gens(n.generators().begin(), n.generators().end());
  for (auto y : h.generators()) gens.push_back(static_cast<Elem>(y * nn));
  return FiniteGroup(order, std::move(table), std::move(gens));
}

}  // namespace isoprod

#include "isoprod/group_algos.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace isoprod {

std::vector<int> ConjugacyClassTable::classes_of_order(const FiniteGroup& g,
                                                       int k) const {
  std::vector<int> out;
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (g.element_order(representatives[c]) == k) out.push_back(static_cast<int>(c));
  return out;
}

ConjugacyClassTable conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  ConjugacyClassTable t;
  t.class_of.assign(n, -1);
  for (std::size_t x = 0; x < n; ++x) {
    if (t.class_of[x] >= 0) continue;
    const int index = static_cast<int>(t.classes.size());
    std::vector<Elem> members;
    for (std::size_t h = 0; h < n; ++h) {
      Elem y = g.conjugate(Elem(x), Elem(h));
      if (t.class_of[y] < 0) {
        t.class_of[y] = index;
        members.push_back(y);
      }
    }
    std::sort(members.begin(), members.end());
    t.representatives.push_back(members.front());
    t.classes.push_back(std::move(members));
  }
  return t;
}

std::vector<Elem> subgroup_generated(const FiniteGroup& g,
                                     std::span<const Elem> seeds) {
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> members{0};
  in[0] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (Elem s : seeds) {
      Elem y = g.mul(members[head], s);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<Elem> commutator_subgroup(const FiniteGroup& g) {
  const auto& gens = g.generators();
  std::vector<Elem> seeds;
  for (Elem a : gens)
    for (Elem b : gens) {
      Elem c = g.commutator(a, b);
      if (c != 0) seeds.push_back(c);
    }
  // Normal closure: add conjugates until closed under the generators.
  for (;;) {
    std::vector<Elem> k = subgroup_generated(g, seeds);
    std::vector<bool> in(g.order(), false);
    for (Elem x : k) in[x] = true;
    bool grew = false;
    for (Elem x : k)
      for (Elem h : gens) {
        Elem y = g.conjugate(x, h);
        if (!in[y]) {
          seeds.push_back(y);
          in[y] = true;
          grew = true;
        }
      }
    if (!grew) return k;
  }
}

bool is_normal_subgroup(const FiniteGroup& g, std::span<const Elem> subgroup) {
  std::vector<bool> in(g.order(), false);
  for (Elem x : subgroup) in[x] = true;
  if (!in[0]) return false;
  for (Elem x : subgroup)
    for (Elem y : subgroup)
      if (!in[g.mul(x, y)]) return false;
  for (Elem x : subgroup)
    for (std::size_t h = 0; h < g.order(); ++h)
      if (!in[g.conjugate(x, Elem(h))]) return false;
  return true;
}

std::vector<std::int64_t> abelian_quotient_invariants(
    const FiniteGroup& g, std::span<const Elem> normal_subgroup) {
  const std::size_t n = g.order();
  // Coset label: minimal element of x N.
  std::vector<Elem> coset(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<Elem> coset_reps;
  for (std::size_t x = 0; x < n; ++x) {
    if (seen[x]) continue;
    coset_reps.push_back(Elem(x));
    for (Elem k : normal_subgroup) {
      Elem y = g.mul(Elem(x), k);
      seen[y] = true;
      coset[y] = Elem(x);
    }
  }
  const std::int64_t q = static_cast<std::int64_t>(coset_reps.size());

  // Exponents per prime, largest first.
  std::vector<std::pair<std::int64_t, std::vector<int>>> per_prime;
  std::int64_t rest = q;
  for (std::int64_t p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    int total = 0;
    while (rest % p == 0) {
      rest /= p;
      ++total;
    }
    // s[k] = log_p |{c : c^(p^k) = 1}|
    std::vector<int> s{0};
    std::int64_t pk = 1;
    for (int k = 1; s.back() < total; ++k) {
      pk *= p;
      std::int64_t count = 0;
      for (Elem c : coset_reps)
        if (coset[g.power(c, pk)] == 0) ++count;
      int log = 0;
      while (count > 1) {
        count /= p;
        ++log;
      }
      s.push_back(log);
    }
    // a[k] = number of cyclic factors of order >= p^k
    std::vector<int> exps;
    const int top = static_cast<int>(s.size()) - 1;
    for (int k = top; k >= 1; --k) {
      int at_least_k = s[k] - s[k - 1];
      int at_least_k1 = k + 1 <= top ? s[k + 1] - s[k] : 0;
      for (int i = 0; i < at_least_k - at_least_k1; ++i) exps.push_back(k);
    }
    per_prime.emplace_back(p, std::move(exps));
  }

  std::size_t factors = 0;
  for (const auto& [p, exps] : per_prime) factors = std::max(factors, exps.size());
  std::vector<std::int64_t> out(factors, 1);
  for (const auto& [p, exps] : per_prime)
    for (std::size_t i = 0; i < exps.size(); ++i)
      for (int e = 0; e < exps[i]; ++e) out[i] *= p;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> abelianization_invariants(const FiniteGroup& g) {
  auto derived = commutator_subgroup(g);
  return abelian_quotient_invariants(g, derived);
}

std::optional<std::vector<Elem>> extend_to_homomorphism(
    const FiniteGroup& source, std::span<const Elem> generators,
    const FiniteGroup& target, std::span<const Elem> images) {
  constexpr Elem kUnset = 0xFFFF;
  std::vector<Elem> map(source.order(), kUnset);
  map[0] = 0;
  std::vector<Elem> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem x = queue[head];
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const Elem y = source.mul(x, generators[i]);
      const Elem image = target.mul(map[x], images[i]);
      if (map[y] == kUnset) {
        map[y] = image;
        queue.push_back(y);
      } else if (map[y] != image) {
        return std::nullopt;
      }
    }
  }
  for (auto& v : map)
    if (v == kUnset) v = 0;
  return map;
}

std::vector<Elem> small_generating_sequence(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n == 1) return {};
  // Elements sharing (order, class size) compete as automorphic images.
  auto classes = conjugacy_classes(g);
  std::map<std::pair<int, std::size_t>, std::size_t> bucket;
  for (std::size_t x = 0; x < n; ++x)
    ++bucket[{g.element_order(Elem(x)), classes.classes[classes.class_of[x]].size()}];
  auto candidates = [&](Elem x) {
    return bucket[{g.element_order(x), classes.classes[classes.class_of[x]].size()}];
  };

  std::vector<Elem> seq;
  std::vector<Elem> current{0};
  while (current.size() < n) {
    Elem best = 0;
    std::size_t best_size = 0, best_cands = 0;
    for (std::size_t x = 1; x < n; ++x) {
      if (std::binary_search(current.begin(), current.end(), Elem(x))) continue;
      std::vector<Elem> seeds = seq;
      seeds.push_back(Elem(x));
      std::size_t size = subgroup_generated(g, seeds).size();
      std::size_t cands = candidates(Elem(x));
      if (size > best_size || (size == best_size && cands < best_cands)) {
        best = Elem(x);
        best_size = size;
        best_cands = cands;
      }
    }
    seq.push_back(best);
    current = subgroup_generated(g, seq);
  }
  return seq;
}

Automorphism inner_automorphism(const FiniteGroup& g, Elem h) {
  Automorphism phi;
  phi.images.resize(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) phi.images[x] = g.conjugate(Elem(x), h);
  return phi;
}

bool is_automorphism(const FiniteGroup& g, const Automorphism& phi) {
  const std::size_t n = g.order();
  if (phi.images.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Elem y : phi.images) {
    if (y >= n || hit[y]) return false;
    hit[y] = true;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (phi.images[g.mul(Elem(a), Elem(b))] !=
          g.mul(phi.images[a], phi.images[b]))
        return false;
  return true;
}

std::vector<Automorphism> automorphism_group(const FiniteGroup& g,
                                             std::size_t order_cap) {
  const std::size_t n = g.order();
  if (n > order_cap)
    throw AutomorphismCapExceeded("automorphism enumeration capped at order " +
                                  std::to_string(order_cap));
  if (n == 1) return {Automorphism{{0}}};

  const auto classes = conjugacy_classes(g);
  auto class_size = [&](Elem x) { return classes.classes[classes.class_of[x]].size(); };
  const std::vector<Elem> gens = small_generating_sequence(g);
  const std::size_t k = gens.size();

  std::vector<std::vector<Elem>> candidates(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t y = 1; y < n; ++y)
      if (g.element_order(Elem(y)) == g.element_order(gens[i]) &&
          class_size(Elem(y)) == class_size(gens[i]))
        candidates[i].push_back(Elem(y));

  // Order of g_i g_j must be preserved; precomputed for pruning.
  std::vector<std::vector<int>> pair_order(k, std::vector<int>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      pair_order[i][j] = g.element_order(g.mul(gens[i], gens[j]));

  std::vector<Automorphism> out;
  std::vector<Elem> images(k);
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == k) {
      auto map = extend_to_homomorphism(g, gens, g, images);
      if (!map) return;
      std::vector<bool> hit(n, false);
      for (Elem y : *map) {
        if (hit[y]) return;
        hit[y] = true;
      }
      out.push_back(Automorphism{std::move(*map)});
      return;
    }
    for (Elem y : candidates[depth]) {
      images[depth] = y;
      bool ok = true;
      for (std::size_t i = 0; i <= depth && ok; ++i)
        ok = g.element_order(g.mul(images[i], y)) == pair_order[i][depth] &&
             g.element_order(g.mul(y, images[i])) == pair_order[depth][i];
      if (!ok) continue;
      if (depth + 1 < k &&
          !extend_to_homomorphism(g, std::span(gens).first(depth + 1), g,
                                  std::span(images).first(depth + 1)))
        continue;
      extend(depth + 1);
    }
  };
  extend(0);

  std::sort(out.begin(), out.end(), [](const Automorphism& a, const Automorphism& b) {
    return a.images < b.images;
  });
  return out;
}

GroupFingerprint fingerprint(const FiniteGroup& g) {
  GroupFingerprint f;
  f.order = g.order();
  f.abelian_invariants = abelianization_invariants(g);
  f.class_count = conjugacy_classes(g).size();
  f.order_histogram = g.order_histogram();
  return f;
}

}  // namespace isoprod

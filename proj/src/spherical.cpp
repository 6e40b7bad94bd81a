#include "isoprod/spherical.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <memory>
#include <stdexcept>
#include <thread>

namespace isoprod {

SubgroupLattice::SubgroupLattice(const FiniteGroup& g)
    : g_(&g), words_((g.order() + 63) / 64) {
  Subgroup trivial;
  trivial.bits.assign(words_, 0);
  trivial.bits[0] = 1;
  trivial.order = 1;
  intern(std::move(trivial));
}

bool SubgroupLattice::contains(Id h, Elem x) const {
  return (subgroups_[h].bits[x >> 6] >> (x & 63)) & 1;
}

SubgroupLattice::Id SubgroupLattice::intern(Subgroup s) {
  auto [it, inserted] = index_.emplace(s.bits, static_cast<Id>(subgroups_.size()));
  if (inserted) {
    subgroups_.push_back(std::move(s));
    joins_.emplace_back(g_->order(), kUnknown);
  }
  return it->second;
}

SubgroupLattice::Id SubgroupLattice::join(Id h, Elem x) {
  Id cached = joins_[h][x];
  if (cached != kUnknown) return cached;
  Id result = h;
  if (!contains(h, x)) {
    Subgroup s;
    s.generators = subgroups_[h].generators;
    s.generators.push_back(x);
    s.bits.assign(words_, 0);
    std::vector<Elem> queue{g_->identity()};
    s.bits[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (Elem gen : s.generators) {
        Elem y = g_->mul(queue[i], gen);
        auto& word = s.bits[y >> 6];
        if (!((word >> (y & 63)) & 1)) {
          word |= std::uint64_t{1} << (y & 63);
          queue.push_back(y);
        }
      }
    s.order = queue.size();
    result = intern(std::move(s));
  }
  joins_[h][x] = result;
  return result;
}

TupleCodec::TupleCodec(std::size_t group_order, int length) : length_(length) {
  bits_ = std::max(1, static_cast<int>(std::bit_width(group_order - 1)));
  if (length * bits_ > 64)
    throw std::invalid_argument("tuples of length " + std::to_string(length) +
                                " over a group of order " + std::to_string(group_order) +
                                " do not fit in 64 bits");
  mask_ = (std::uint64_t{1} << bits_) - 1;
}

std::uint64_t TupleCodec::pack(std::span<const Elem> t) const {
  std::uint64_t key = 0;
  for (Elem x : t) key = (key << bits_) | x;
  return key;
}

void TupleCodec::unpack(std::uint64_t key, std::span<Elem> out) const {
  for (int i = length_ - 1; i >= 0; --i) {
    out[i] = static_cast<Elem>(key & mask_);
    key >>= bits_;
  }
}

SystemTuple TupleCodec::unpack(std::uint64_t key) const {
  SystemTuple t(length_);
  unpack(key, t);
  return t;
}

SystemSearch::SystemSearch(const FiniteGroup& g, const TypeTuple& t, ElementMask allowed)
    : g_(&g), type_(t), allowed_(std::move(allowed)) {
  if (!allowed_.empty() && allowed_.size() != g.order())
    throw std::invalid_argument("element mask size does not match the group order");
  std::vector<int> seq = t.orders();
  std::sort(seq.begin(), seq.end());
  do sequences_.push_back(seq);
  while (std::next_permutation(seq.begin(), seq.end()));

  int max_order = seq.empty() ? 0 : seq.back();
  candidates_by_order_.resize(max_order + 1);
  for (std::size_t x = 0; x < g.order(); ++x) {
    int k = g.element_order(Elem(x));
    if (k <= max_order && (allowed_.empty() || allowed_[x]))
      candidates_by_order_[k].push_back(Elem(x));
  }
}

std::vector<SystemSearch::Task> SystemSearch::tasks() const {
  std::vector<Task> out;
  if (type_.length() == 0) return out;
  for (std::size_t s = 0; s < sequences_.size(); ++s)
    for (Elem x : candidates_by_order_[sequences_[s][0]]) out.push_back({s, x});
  return out;
}

template <class Leaf>
void SystemSearch::run_task(const Task& task, SubgroupLattice& lattice, Leaf&& leaf) const {
  const auto& seq = sequences_[task.sequence];
  const int r = static_cast<int>(seq.size());
  const FiniteGroup& g = *g_;
  std::vector<Elem> tuple(r);
  std::vector<Elem> prefix(r);                  // product of entries before position i
  std::vector<SubgroupLattice::Id> span(r);     // subgroup generated by them
  const int last = r - 1;
  const int last_order = seq[last];
  auto last_ok = [&](Elem x) {
    return g.element_order(x) == last_order && (allowed_.empty() || allowed_[x]);
  };

  if (r == 1) {
    // Only the trivial group has a one-entry system, and no type has order 1.
    return;
  }
  tuple[0] = task.first;
  prefix[1] = task.first;
  span[1] = lattice.join(lattice.trivial(), task.first);
  if (r == 2) {
    Elem x = g.inv(prefix[1]);
    if (last_ok(x) && lattice.is_full(span[1])) {
      tuple[1] = x;
      leaf(std::span<const Elem>(tuple));
    }
    return;
  }

  // Iterative depth-first search over positions 1..r-2.
  std::vector<std::size_t> cursor(r, 0);
  int pos = 1;
  while (pos >= 1) {
    const auto& cands = candidates_by_order_[seq[pos]];
    if (cursor[pos] == cands.size()) {
      cursor[pos] = 0;
      --pos;
      continue;
    }
    Elem x = cands[cursor[pos]++];
    tuple[pos] = x;
    Elem p = g.mul(prefix[pos], x);
    SubgroupLattice::Id h = lattice.join(span[pos], x);
    if (pos + 1 == last) {
      Elem y = g.inv(p);
      if (last_ok(y) && lattice.is_full(h)) {
        tuple[last] = y;
        leaf(std::span<const Elem>(tuple));
      }
      continue;
    }
    prefix[pos + 1] = p;
    span[pos + 1] = h;
    ++pos;
  }
}

void SystemSearch::for_each(const std::function<void(std::span<const Elem>)>& visit) const {
  SubgroupLattice lattice(*g_);
  for (const auto& task : tasks()) run_task(task, lattice, visit);
}

namespace {

// Runs work(task_index, worker) over [0, n) with a shared counter.
template <class Work>
void parallel_tasks(std::size_t n, unsigned jobs, Work&& work) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < jobs; ++w)
    threads.emplace_back([&, w] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) work(i, w);
    });
  for (auto& t : threads) t.join();
}

}  // namespace

std::uint64_t SystemSearch::count(unsigned jobs) const {
  auto ts = tasks();
  jobs = std::max(1u, jobs);
  std::vector<std::uint64_t> counts(ts.size(), 0);
  std::vector<std::unique_ptr<SubgroupLattice>> lattices(jobs);
  parallel_tasks(ts.size(), jobs, [&](std::size_t i, unsigned w) {
    if (!lattices[w]) lattices[w] = std::make_unique<SubgroupLattice>(*g_);
    std::uint64_t c = 0;
    run_task(ts[i], *lattices[w], [&](std::span<const Elem>) { ++c; });
    counts[i] = c;
  });
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

std::vector<std::uint64_t> SystemSearch::collect_packed(const TupleCodec& codec,
                                                        unsigned jobs) const {
  if (codec.length() != type_.length())
    throw std::invalid_argument("codec length does not match the type");
  auto ts = tasks();
  jobs = std::max(1u, jobs);
  std::vector<std::vector<std::uint64_t>> parts(ts.size());
  std::vector<std::unique_ptr<SubgroupLattice>> lattices(jobs);
  parallel_tasks(ts.size(), jobs, [&](std::size_t i, unsigned w) {
    if (!lattices[w]) lattices[w] = std::make_unique<SubgroupLattice>(*g_);
    run_task(ts[i], *lattices[w],
             [&](std::span<const Elem> t) { parts[i].push_back(codec.pack(t)); });
  });
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<std::uint64_t> out;
  out.reserve(total);
  for (auto& p : parts) {
    out.insert(out.end(), p.begin(), p.end());
    std::vector<std::uint64_t>().swap(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SystemTuple> enumerate_systems(const FiniteGroup& g, const TypeTuple& t) {
  std::vector<SystemTuple> out;
  SystemSearch(g, t).for_each(
      [&](std::span<const Elem> a) { out.emplace_back(a.begin(), a.end()); });
  return out;
}

std::uint64_t count_systems(const FiniteGroup& g, const TypeTuple& t, unsigned jobs) {
  return SystemSearch(g, t).count(jobs);
}

namespace {

ElementMask mask_without_class(const FiniteGroup& g, const TypeTuple& t,
                               const ConjugacyClassTable& classes, int excluded_class) {
  if (!t.all_equal_to(2)) throw std::invalid_argument("restricted search needs a type [2^r]");
  if (excluded_class < 0 || static_cast<std::size_t>(excluded_class) >= classes.size() ||
      g.element_order(classes.classes[excluded_class][0]) != 2)
    throw std::invalid_argument("excluded class is not a class of involutions");
  ElementMask allowed(g.order(), true);
  for (Elem x : classes.classes[excluded_class]) allowed[x] = false;
  return allowed;
}

}  // namespace

std::vector<SystemTuple> enumerate_restricted(const FiniteGroup& g, const TypeTuple& t,
                                              const ConjugacyClassTable& classes,
                                              int excluded_class) {
  std::vector<SystemTuple> out;
  SystemSearch(g, t, mask_without_class(g, t, classes, excluded_class))
      .for_each([&](std::span<const Elem> a) { out.emplace_back(a.begin(), a.end()); });
  return out;
}

std::uint64_t count_restricted(const FiniteGroup& g, const TypeTuple& t,
                               const ConjugacyClassTable& classes, int excluded_class,
                               unsigned jobs) {
  return SystemSearch(g, t, mask_without_class(g, t, classes, excluded_class)).count(jobs);
}

bool is_spherical_system(const FiniteGroup& g, const TypeTuple& t, std::span<const Elem> a) {
  if (static_cast<int>(a.size()) != t.length()) return false;
  std::vector<int> orders;
  Elem product = g.identity();
  for (Elem x : a) {
    if (x >= g.order()) return false;
    orders.push_back(g.element_order(x));
    product = g.mul(product, x);
  }
  std::vector<int> expected = t.orders();
  std::sort(orders.begin(), orders.end());
  std::sort(expected.begin(), expected.end());
  if (orders != expected || product != g.identity()) return false;
  return subgroup_generated(g, a).size() == g.order();
}

ElementMask stabilizer_set(const FiniteGroup& g, const ConjugacyClassTable& classes,
                           std::span<const Elem> a) {
  ElementMask sigma(g.order(), false);
  std::vector<bool> class_done(classes.size(), false);
  for (Elem x : a) {
    Elem p = g.identity();
    for (int j = 0; j < g.element_order(x); ++j) {
      int c = classes.class_of[p];
      if (!class_done[c]) {
        class_done[c] = true;
        for (Elem y : classes.classes[c]) sigma[y] = true;
      }
      p = g.mul(p, x);
    }
  }
  sigma[g.identity()] = true;
  return sigma;
}

bool disjoint(const ElementMask& sigma1, const ElementMask& sigma2) {
  if (sigma1.size() != sigma2.size())
    throw std::invalid_argument("stabilizer sets of different groups");
  for (std::size_t x = 1; x < sigma1.size(); ++x)
    if (sigma1[x] && sigma2[x]) return false;
  return true;
}

bool disjoint(const FiniteGroup& g, const ConjugacyClassTable& classes,
              std::span<const Elem> a1, std::span<const Elem> a2) {
  return disjoint(stabilizer_set(g, classes, a1), stabilizer_set(g, classes, a2));
}

ElementMask partner_mask(const FiniteGroup& g, const ElementMask& sigma) {
  ElementMask allowed(g.order(), true);
  for (std::size_t x = 1; x < g.order(); ++x) {
    Elem p = Elem(x);
    while (p != g.identity()) {
      if (sigma[p]) {
        allowed[x] = false;
        break;
      }
      p = g.mul(p, Elem(x));
    }
  }
  return allowed;
}

}  // namespace isoprod

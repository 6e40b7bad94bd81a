#include "isoprod/orbits.hpp"

#include <algorithm>
#include <map>

#include <absl/container/flat_hash_set.h>

namespace isoprod {

void hurwitz_move_in_place(const FiniteGroup& g, std::span<Elem> a, BraidMove m) {
  if (m.index < 1 || m.index >= static_cast<int>(a.size()))
    throw std::out_of_range("braid move index " + std::to_string(m.index) + " for length " +
                            std::to_string(a.size()));
  Elem& x = a[m.index - 1];
  Elem& y = a[m.index];
  if (!m.inverse) {
    Elem nx = g.mul(g.mul(x, y), g.inv(x));
    y = x;
    x = nx;
  } else {
    Elem ny = g.mul(g.mul(g.inv(y), x), y);
    x = y;
    y = ny;
  }
}

SystemTuple hurwitz_move(const FiniteGroup& g, std::span<const Elem> a, BraidMove m) {
  SystemTuple out(a.begin(), a.end());
  hurwitz_move_in_place(g, out, m);
  return out;
}

SystemTuple apply_automorphism(std::span<const Elem> a, const Automorphism& phi) {
  SystemTuple out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = phi(a[i]);
  return out;
}

std::vector<Automorphism> automorphism_generators(std::span<const Automorphism> group) {
  std::vector<Automorphism> gens;
  if (group.empty()) return gens;
  const std::size_t n = group[0].images.size();
  std::vector<Elem> identity(n);
  for (std::size_t x = 0; x < n; ++x) identity[x] = Elem(x);
  absl::flat_hash_set<std::vector<Elem>> closure{identity};
  for (const auto& phi : group) {
    if (closure.size() >= group.size()) break;
    if (closure.contains(phi.images)) continue;
    gens.push_back(phi);
    std::vector<std::vector<Elem>> queue(closure.begin(), closure.end());
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto& s : gens) {
        std::vector<Elem> y(n);
        for (std::size_t x = 0; x < n; ++x) y[x] = queue[i][s.images[x]];
        if (closure.insert(y).second) queue.push_back(std::move(y));
      }
  }
  return gens;
}

GroupContext::GroupContext(std::shared_ptr<const FiniteGroup> g, std::size_t automorphism_cap)
    : group_(std::move(g)),
      classes_(conjugacy_classes(*group_)),
      automorphisms_(automorphism_group(*group_, automorphism_cap)),
      aut_generators_(isoprod::automorphism_generators(automorphisms_)) {}

HurwitzOrbitTable::HurwitzOrbitTable(const FiniteGroup& g, TupleCodec codec,
                                     std::vector<std::uint64_t> sorted_keys)
    : codec_(codec), keys_(std::move(sorted_keys)) {
  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  index_.reserve(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (!index_.emplace(keys_[i], static_cast<std::uint32_t>(i)).second)
      throw std::invalid_argument("duplicate system in orbit table");
  }
  orbit_.assign(keys_.size(), kNone);
  const int r = codec_.length();
  SystemTuple t(r);
  std::vector<std::uint32_t> queue;
  for (std::size_t seed = 0; seed < keys_.size(); ++seed) {
    if (orbit_[seed] != kNone) continue;
    const auto id = static_cast<std::uint32_t>(orbit_min_.size());
    orbit_min_.push_back(keys_[seed]);
    orbit_[seed] = id;
    queue.assign(1, static_cast<std::uint32_t>(seed));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (int i = 1; i < r; ++i) {
        codec_.unpack(keys_[queue[head]], t);
        hurwitz_move_in_place(g, t, {i, false});
        auto it = index_.find(codec_.pack(t));
        if (it == index_.end())
          throw std::logic_error("system set is not closed under the Hurwitz action");
        if (orbit_[it->second] == kNone) {
          orbit_[it->second] = id;
          queue.push_back(it->second);
        }
      }
    }
    orbit_size_.push_back(queue.size());
  }
}

std::optional<std::uint32_t> HurwitzOrbitTable::orbit_of_key(std::uint64_t key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return orbit_[it->second];
}

UnionFind::UnionFind(std::size_t n) : parent_(n) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (b < a) std::swap(a, b);
  parent_[b] = a;
}

std::size_t UnionFind::class_count() {
  std::size_t c = 0;
  for (std::size_t i = 0; i < parent_.size(); ++i)
    if (find(i) == i) ++c;
  return c;
}

std::vector<std::uint32_t> merge_orbits(const HurwitzOrbitTable& table,
                                        std::span<const Automorphism> generators,
                                        std::size_t* class_count) {
  const std::size_t n = table.orbit_count();
  UnionFind uf(n);
  for (std::uint32_t o = 0; o < n; ++o) {
    auto rep = table.representative(o);
    for (const auto& phi : generators) {
      auto image = table.orbit_of(apply_automorphism(rep, phi));
      if (!image) throw std::logic_error("automorphism does not preserve the system set");
      uf.unite(o, *image);
    }
  }
  std::vector<std::uint32_t> cls(n);
  std::uint32_t next = 0;
  for (std::uint32_t o = 0; o < n; ++o) cls[o] = uf.find(o) == o ? next++ : cls[uf.find(o)];
  if (class_count) *class_count = next;
  return cls;
}

OrbitSet orbit_decompose(const FiniteGroup& g, const std::vector<SystemTuple>& systems,
                         OrbitAction action, std::span<const Automorphism> automorphisms) {
  OrbitSet out;
  if (systems.empty()) return out;
  TupleCodec codec(g.order(), static_cast<int>(systems[0].size()));
  std::vector<std::uint64_t> keys;
  for (const auto& s : systems) {
    if (s.size() != systems[0].size())
      throw std::invalid_argument("systems of different lengths");
    keys.push_back(codec.pack(s));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  HurwitzOrbitTable table(g, codec, std::move(keys));

  std::size_t classes = 0;
  auto cls = merge_orbits(
      table, action == OrbitAction::BraidAndAut ? automorphisms : std::span<const Automorphism>{},
      &classes);
  out.representatives.resize(classes);
  out.orbit_sizes.assign(classes, 0);
  std::vector<bool> seen(classes, false);
  for (std::uint32_t o = 0; o < table.orbit_count(); ++o) {
    if (!seen[cls[o]]) {
      seen[cls[o]] = true;
      out.representatives[cls[o]] = table.representative(o);
    }
    out.orbit_sizes[cls[o]] += table.orbit_size(o);
  }
  for (const auto& s : systems) out.membership.push_back(cls[*table.orbit_of(s)]);
  return out;
}

namespace {

std::vector<int> sorted_orders(const FiniteGroup& g, std::span<const Elem> a) {
  std::vector<int> o;
  for (Elem x : a) o.push_back(g.element_order(x));
  std::sort(o.begin(), o.end());
  return o;
}

// Number of systems is roughly orderings * prod(#elements of order m_i) / |G|.
double estimated_systems(const FiniteGroup& g, const TypeTuple& t) {
  std::map<int, std::size_t> count;
  for (std::size_t x = 0; x < g.order(); ++x) ++count[g.element_order(Elem(x))];
  std::vector<int> seq = t.orders();
  std::sort(seq.begin(), seq.end());
  double orderings = 0;
  do orderings += 1;
  while (std::next_permutation(seq.begin(), seq.end()));
  double est = orderings / static_cast<double>(g.order());
  for (int m : t.orders()) est *= static_cast<double>(count[m]);
  return est;
}

}  // namespace

PairOrbitClassifier::PairOrbitClassifier(const GroupContext& ctx, const TypeTuple& t1,
                                         const TypeTuple& t2,
                                         const ComponentCountOptions& options)
    : ctx_(&ctx), t1_(t1), t2_(t2), options_(options) {
  if (t1_ == t2_ && options_.exchange) options_.retain_tables = true;
  build();
}

void PairOrbitClassifier::charge(std::size_t tuples) {
  bytes_in_use_ += tuples * kBytesPerStoredTuple;
  if (bytes_in_use_ > options_.memory_cap_bytes)
    throw MemoryCapExceeded("orbit tables need about " + std::to_string(bytes_in_use_ >> 20) +
                            " MiB, over the cap of " +
                            std::to_string(options_.memory_cap_bytes >> 20) + " MiB (" +
                            std::to_string(result_.anchor_systems) + " anchor systems, " +
                            std::to_string(result_.partner_systems) +
                            " partner systems so far)");
}

void PairOrbitClassifier::build() {
  const FiniteGroup& g = ctx_->group();
  const double e1 = estimated_systems(g, t1_);
  const double e2 = estimated_systems(g, t2_);
  result_.anchored_on_t2 = e2 < e1;
  anchor_type_ = result_.anchored_on_t2 ? t2_ : t1_;
  partner_type_ = result_.anchored_on_t2 ? t1_ : t2_;
  if (e1 == 0 || e2 == 0) return;

  TupleCodec anchor_codec(g.order(), anchor_type_.length());
  TupleCodec partner_codec(g.order(), partner_type_.length());

  auto keys = SystemSearch(g, anchor_type_).collect_packed(anchor_codec, options_.jobs);
  result_.anchor_systems = keys.size();
  charge(keys.size());
  anchor_table_ = std::make_unique<HurwitzOrbitTable>(g, anchor_codec, std::move(keys));
  result_.anchor_hurwitz_orbits = anchor_table_->orbit_count();
  std::size_t classes = 0;
  anchor_class_ = merge_orbits(*anchor_table_, ctx_->automorphism_generators(), &classes);
  result_.anchor_classes = classes;

  // Class representatives and the partner mask of each.
  std::vector<ElementMask> masks;
  anchors_.resize(classes);
  {
    std::vector<bool> seen(classes, false);
    for (std::uint32_t o = 0; o < anchor_table_->orbit_count(); ++o) {
      auto c = anchor_class_[o];
      if (seen[c]) continue;
      seen[c] = true;
      anchors_[c].tuple = anchor_table_->representative(o);
      anchors_[c].hurwitz_orbit = o;
    }
  }
  std::map<ElementMask, std::size_t> table_of_mask;
  std::vector<std::size_t> last_use;
  for (std::size_t c = 0; c < classes; ++c) {
    auto mask = partner_mask(g, stabilizer_set(g, ctx_->classes(), anchors_[c].tuple));
    auto [it, inserted] = table_of_mask.emplace(mask, masks.size());
    if (inserted) {
      masks.push_back(std::move(mask));
      last_use.push_back(c);
    }
    anchors_[c].partner_table = it->second;
    last_use[it->second] = c;
  }
  partner_tables_.resize(masks.size());

  std::size_t offset = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    Anchor& anchor = anchors_[c];
    const ElementMask& mask = masks[anchor.partner_table];
    auto& table = partner_tables_[anchor.partner_table];
    if (!table) {
      auto pkeys = SystemSearch(g, partner_type_, mask).collect_packed(partner_codec, options_.jobs);
      charge(pkeys.size());
      table = std::make_unique<HurwitzOrbitTable>(g, partner_codec, std::move(pkeys));
    }

    std::vector<Automorphism> stabilizer, normalizer;
    for (const auto& phi : ctx_->automorphisms()) {
      bool keeps_mask = true;
      for (std::size_t x = 0; x < g.order() && keeps_mask; ++x)
        if (mask[x] && !mask[phi(Elem(x))]) keeps_mask = false;
      if (!keeps_mask) continue;
      normalizer.push_back(phi);
      if (anchor_table_->orbit_of(apply_automorphism(anchor.tuple, phi)) == anchor.hurwitz_orbit)
        stabilizer.push_back(phi);
    }
    std::size_t exact = 0, coarse = 0;
    anchor.partner_class = merge_orbits(*table, automorphism_generators(stabilizer), &exact);
    merge_orbits(*table, automorphism_generators(normalizer), &coarse);
    anchor.class_offset = offset;
    offset += exact;

    result_.partner_systems += table->size();
    result_.partner_hurwitz_orbits += table->orbit_count();
    result_.upper_bound += table->orbit_count();
    result_.lower_bound += coarse;

    std::vector<bool> seen(exact, false);
    for (std::uint32_t o = 0; o < table->orbit_count(); ++o) {
      auto k = anchor.partner_class[o];
      if (seen[k]) continue;
      seen[k] = true;
      raw_representatives_.emplace_back(anchor.tuple, table->representative(o));
    }

    if (!options_.retain_tables && last_use[anchor.partner_table] == c) {
      bytes_in_use_ -= table->size() * kBytesPerStoredTuple;
      table.reset();
    }
  }
  result_.n_before_exchange = offset;

  std::vector<std::size_t> kept;
  if (t1_ == t2_ && options_.exchange && offset >= 2) {
    result_.exchange_checked = true;
    UnionFind uf(offset);
    for (std::size_t i = 0; i < offset; ++i) {
      const auto& [a, b] = raw_representatives_[i];
      auto j = classify_anchored(b, a);
      if (!j) throw std::logic_error("swapped pair is not a disjoint pair");
      uf.unite(i, *j);
    }
    for (std::size_t i = 0; i < offset; ++i)
      if (uf.find(i) == i) kept.push_back(i);
  } else {
    for (std::size_t i = 0; i < offset; ++i) kept.push_back(i);
  }
  result_.n = kept.size();
  for (auto i : kept) {
    auto p = raw_representatives_[i];
    if (result_.anchored_on_t2) std::swap(p.first, p.second);
    result_.representatives.push_back(std::move(p));
  }
}

std::optional<std::size_t> PairOrbitClassifier::classify_anchored(std::span<const Elem> x,
                                                                  std::span<const Elem> y) const {
  if (!anchor_table_ || static_cast<int>(x.size()) != anchor_type_.length() ||
      static_cast<int>(y.size()) != partner_type_.length())
    return std::nullopt;
  auto ox = anchor_table_->orbit_of(x);
  if (!ox) return std::nullopt;
  const Anchor& anchor = anchors_[anchor_class_[*ox]];
  const auto& table = partner_tables_[anchor.partner_table];
  if (!table) throw std::logic_error("partner table was not retained");
  for (const auto& phi : ctx_->automorphisms()) {
    if (anchor_table_->orbit_of(apply_automorphism(x, phi)) != anchor.hurwitz_orbit) continue;
    auto oy = table->orbit_of(apply_automorphism(y, phi));
    if (!oy) return std::nullopt;
    return anchor.class_offset + anchor.partner_class[*oy];
  }
  throw std::logic_error("no automorphism maps the system to its class representative");
}

std::optional<std::size_t> PairOrbitClassifier::classify(std::span<const Elem> a,
                                                         std::span<const Elem> b) const {
  return result_.anchored_on_t2 ? classify_anchored(b, a) : classify_anchored(a, b);
}

ComponentCount count_component_orbits(const GroupContext& ctx, const TypeTuple& t1,
                                      const TypeTuple& t2, const ComponentCountOptions& options) {
  return PairOrbitClassifier(ctx, t1, t2, options).result();
}

bool exchange_equivalent(const GroupContext& ctx, const SystemPair& p1, const SystemPair& p2) {
  const FiniteGroup& g = ctx.group();
  auto o = sorted_orders(g, p1.first);
  if (sorted_orders(g, p1.second) != o || sorted_orders(g, p2.first) != o ||
      sorted_orders(g, p2.second) != o)
    throw std::invalid_argument("exchange check needs pairs of one type in both slots");
  const SystemPair swapped{p1.second, p1.first};
  if (swapped == p2) return true;
  TypeTuple t(o);
  ComponentCountOptions opts;
  opts.exchange = false;
  opts.retain_tables = true;
  PairOrbitClassifier classifier(ctx, t, t, opts);
  auto c1 = classifier.classify(p1.second, p1.first);
  auto c2 = classifier.classify(p2.first, p2.second);
  // Pairs that are not disjoint pairs of systems: direct closure.
  if (!c1 || !c2) return same_pair_orbit(ctx, swapped, p2);
  return *c1 == *c2;
}

bool same_pair_orbit(const GroupContext& ctx, const SystemPair& from, const SystemPair& to,
                     std::size_t max_pairs) {
  const FiniteGroup& g = ctx.group();
  if (from.first.size() != to.first.size() || from.second.size() != to.second.size())
    return false;
  TupleCodec c1(g.order(), static_cast<int>(from.first.size()));
  TupleCodec c2(g.order(), static_cast<int>(from.second.size()));
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  const Key target{c1.pack(to.first), c2.pack(to.second)};
  Key start{c1.pack(from.first), c2.pack(from.second)};
  if (start == target) return true;
  absl::flat_hash_set<Key> seen{start};
  std::vector<Key> queue{start};
  SystemTuple a(from.first.size()), b(from.second.size());
  auto visit = [&](const Key& k) {
    if (seen.insert(k).second) {
      if (seen.size() > max_pairs)
        throw MemoryCapExceeded("pair orbit closure exceeded " + std::to_string(max_pairs) +
                                " pairs");
      queue.push_back(k);
    }
    return k == target;
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Key cur = queue[head];
    for (int i = 1; i < c1.length(); ++i) {
      c1.unpack(cur.first, a);
      hurwitz_move_in_place(g, a, {i, false});
      if (visit({c1.pack(a), cur.second})) return true;
    }
    for (int i = 1; i < c2.length(); ++i) {
      c2.unpack(cur.second, b);
      hurwitz_move_in_place(g, b, {i, false});
      if (visit({cur.first, c2.pack(b)})) return true;
    }
    c1.unpack(cur.first, a);
    c2.unpack(cur.second, b);
    for (const auto& phi : ctx.automorphism_generators())
      if (visit({c1.pack(apply_automorphism(a, phi)), c2.pack(apply_automorphism(b, phi))}))
        return true;
  }
  return false;
}

}  // namespace isoprod

#include "dsimb/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "dsimb/neighbors.hpp"
#include "dsimb/rng.hpp"

namespace dsimb {

namespace {

std::vector<std::size_t> members_of(const Dataset& d, int cls) {
  std::vector<std::size_t> m;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.label(i) == cls) m.push_back(i);
  return m;
}

// Generates n_new instances of cls from parents chosen by `next_parent`
// (positions into `members`), each with a uniformly drawn neighbour among its
// k within-class nearest.
template <typename NextParent>
Dataset synthesize(const Dataset& d, int cls, const std::vector<std::size_t>& members, std::size_t n_new,
                   std::size_t k, Rng& rng, NextParent next_parent) {
  Dataset out = d.empty_like();
  out.reserve(n_new);
  if (members.size() == 1) {
    for (std::size_t s = 0; s < n_new; ++s) out.add(d.row(members[0]), cls);
    return out;
  }
  const std::size_t k_eff = std::min(k, members.size() - 1);
  const NeighborIndex index(d);
  std::vector<std::optional<std::vector<std::size_t>>> cache(members.size());
  for (std::size_t s = 0; s < n_new; ++s) {
    const std::size_t p = next_parent(s);
    const std::size_t parent = members[p];
    if (!cache[p]) cache[p] = index.knn(d.row(parent), k_eff, cls, parent).indices;
    const auto& nbs = *cache[p];
    const std::size_t nb = nbs[rng.below(nbs.size())];
    const double t = rng.uniform();
    out.add(interpolate(d, d.row(parent), d.row(nb), t), cls);
  }
  return out;
}

void append(Dataset& dst, const Dataset& src) {
  for (std::size_t i = 0; i < src.size(); ++i) dst.add(src.row(i), src.label(i));
}

}  // namespace

void ResamplePlan::validate() const {
  switch (method) {
    case Method::smote:
    case Method::ramo:
      if (variant == Variant::random) throw std::invalid_argument("smote/ramo need variant equalize or double_minority");
      break;
    case Method::random_balance:
      if (variant != Variant::random) throw std::invalid_argument("random_balance needs variant random");
      break;
    case Method::rus:
      if (variant != Variant::equalize) throw std::invalid_argument("rus needs variant equalize");
      break;
    case Method::none:
      break;
  }
  if (k_smote == 0 || k1 == 0 || k2 == 0) throw std::invalid_argument("neighbour counts must be positive");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
}

const char* to_string(Method m) {
  switch (m) {
    case Method::none: return "none";
    case Method::smote: return "smote";
    case Method::ramo: return "ramo";
    case Method::random_balance: return "random_balance";
    case Method::rus: return "rus";
  }
  return "?";
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::equalize: return "equalize";
    case Variant::double_minority: return "double_minority";
    case Variant::random: return "random";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  for (Method m : {Method::none, Method::smote, Method::ramo, Method::random_balance, Method::rus})
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown method '" + s + "'");
}

Variant parse_variant(const std::string& s) {
  for (Variant v : {Variant::equalize, Variant::double_minority, Variant::random})
    if (s == to_string(v)) return v;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

std::vector<NamedPlan> default_plans() {
  auto make = [](Method m, Variant v) {
    ResamplePlan p;
    p.method = m;
    p.variant = v;
    return p;
  };
  return {
      {"Ba", make(Method::none, Variant::equalize)},
      {"Ba-RM", make(Method::ramo, Variant::equalize)},
      {"Ba-RM100", make(Method::ramo, Variant::double_minority)},
      {"Ba-SM", make(Method::smote, Variant::equalize)},
      {"Ba-SM100", make(Method::smote, Variant::double_minority)},
      {"Ba-RB", make(Method::random_balance, Variant::random)},
  };
}

ResamplePlan plan_by_name(const std::string& name) {
  for (auto& p : default_plans())
    if (p.name == name) return p.plan;
  throw std::invalid_argument("unknown plan '" + name + "'");
}

Roles assign_roles(const Dataset& d) {
  const auto counts = class_counts(d);
  Roles r;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > 0 && (r.majority < 0 || counts[c] > counts[static_cast<std::size_t>(r.majority)])) {
      r.majority = static_cast<int>(c);
    }
  }
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (counts[c] > 0 && static_cast<int>(c) != r.majority) r.minorities.push_back(static_cast<int>(c));
  return r;
}

std::vector<std::size_t> compute_targets(const Dataset& d, const ResamplePlan& plan) {
  auto counts = class_counts(d);
  if (plan.method == Method::none) return counts;
  if (plan.method == Method::random_balance) throw std::invalid_argument("random_balance targets are drawn at random");
  const Roles roles = assign_roles(d);
  if (roles.majority < 0) return counts;
  if (plan.method == Method::rus) {
    std::size_t lo = counts[static_cast<std::size_t>(roles.majority)];
    for (std::size_t c : counts)
      if (c > 0) lo = std::min(lo, c);
    for (auto& c : counts)
      if (c > 0) c = lo;
    return counts;
  }
  const std::size_t maj = counts[static_cast<std::size_t>(roles.majority)];
  for (int m : roles.minorities) {
    auto& c = counts[static_cast<std::size_t>(m)];
    c = plan.variant == Variant::equalize ? maj : std::min(2 * c, maj);
  }
  return counts;
}

std::vector<double> interpolate(const Dataset& d, std::span<const double> x, std::span<const double> nb, double t) {
  std::vector<double> out(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (d.schema()[a].is_nominal()) out[a] = t < 0.5 ? x[a] : nb[a];
    else out[a] = x[a] + t * (nb[a] - x[a]);
  }
  return out;
}

Dataset smote_class(const Dataset& d, int cls, std::size_t n_new, std::size_t k, std::uint64_t seed) {
  const auto members = members_of(d, cls);
  if (members.empty()) throw DataError("class " + std::to_string(cls) + " has no instances to oversample");
  if (n_new == 0) return d.empty_like();
  Rng rng(seed);
  std::vector<std::size_t> order(members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  return synthesize(d, cls, members, n_new, k, rng, [&](std::size_t s) { return order[s % order.size()]; });
}

double ramo_weight(std::size_t delta, double alpha) {
  return 1.0 / (1.0 + std::exp(-alpha * static_cast<double>(delta)));
}

std::vector<std::size_t> ramo_deltas(const Dataset& d, int cls, std::size_t k1, RamoDelta mode) {
  const auto members = members_of(d, cls);
  std::vector<std::size_t> deltas;
  deltas.reserve(members.size());
  if (d.size() < 2) return std::vector<std::size_t>(members.size(), 0);
  const NeighborIndex index(d);
  const int majority = assign_roles(d).majority;
  for (std::size_t i : members) {
    const auto nb = index.knn(d.row(i), k1, std::nullopt, i);
    std::size_t delta = 0;
    for (std::size_t j : nb.indices) {
      const int y = d.label(j);
      delta += mode == RamoDelta::other_classes ? y != cls : y == majority && y != cls;
    }
    deltas.push_back(delta);
  }
  return deltas;
}

std::vector<double> ramo_weights(const Dataset& d, int cls, std::size_t k1, double alpha, RamoDelta mode) {
  std::vector<double> w;
  for (std::size_t delta : ramo_deltas(d, cls, k1, mode)) w.push_back(ramo_weight(delta, alpha));
  return w;
}

Dataset ramo_class(const Dataset& d, int cls, std::size_t n_new, const ResamplePlan& plan, std::uint64_t seed) {
  const auto members = members_of(d, cls);
  if (members.empty()) throw DataError("class " + std::to_string(cls) + " has no instances to oversample");
  if (n_new == 0) return d.empty_like();
  const auto w = ramo_weights(d, cls, plan.k1, plan.alpha, plan.ramo_delta);
  std::vector<double> cum(w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) cum[i] = acc += w[i];
  Rng rng(seed);
  return synthesize(d, cls, members, n_new, plan.k2, rng, [&](std::size_t) { return rng.weighted(cum); });
}

std::vector<std::size_t> random_balance_targets(const Dataset& d, std::uint64_t seed) {
  const Roles roles = assign_roles(d);
  std::vector<int> order{roles.majority};
  order.insert(order.end(), roles.minorities.begin(), roles.minorities.end());
  const std::size_t C = order.size(), S = d.size();
  if (C < 2) throw DataError("random balance needs at least two classes");
  if (S < 2 * C) throw DataError("random balance needs at least two instances per class on average");

  Rng rng(derive_seed(seed, {0}));
  const auto span = static_cast<std::int64_t>(S - 2 * C);
  std::vector<std::int64_t> cuts(C - 1);
  for (auto& c : cuts) c = rng.between(0, span);
  std::sort(cuts.begin(), cuts.end());

  std::vector<std::size_t> targets(d.num_classes(), 0);
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < C; ++i) {
    const std::int64_t next = i + 1 < C ? cuts[i] : span;
    targets[static_cast<std::size_t>(order[i])] = 2 + static_cast<std::size_t>(next - prev);
    prev = next;
  }
  return targets;
}

Dataset resize_classes(const Dataset& d, std::span<const std::size_t> targets, std::size_t k, std::uint64_t seed) {
  if (targets.size() != d.num_classes()) throw std::invalid_argument("one target per class expected");
  const auto counts = class_counts(d);
  std::vector<char> keep(d.size(), 1);
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (targets[c] >= counts[c]) continue;
    auto members = members_of(d, static_cast<int>(c));
    Rng rng(derive_seed(seed, {1, c}));
    rng.shuffle(members);
    for (std::size_t i = targets[c]; i < members.size(); ++i) keep[members[i]] = 0;
  }
  Dataset out = d.empty_like();
  std::size_t total = 0;
  for (std::size_t t : targets) total += t;
  out.reserve(total);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (keep[i]) out.add(d.row(i), d.label(i));
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (targets[c] <= counts[c]) continue;
    if (counts[c] == 0) throw DataError("cannot grow absent class " + std::to_string(c));
    append(out, smote_class(d, static_cast<int>(c), targets[c] - counts[c], k, derive_seed(seed, {2, c})));
  }
  return out;
}

Dataset random_balance(const Dataset& d, std::uint64_t seed, std::size_t k) {
  const auto targets = random_balance_targets(d, seed);
  return resize_classes(d, targets, k, seed);
}

Dataset apply(const Dataset& d, const ResamplePlan& plan) {
  plan.validate();
  switch (plan.method) {
    case Method::none:
      return d;
    case Method::random_balance:
      return random_balance(d, plan.seed, plan.k_smote);
    case Method::rus:
      return resize_classes(d, compute_targets(d, plan), plan.k_smote, plan.seed);
    case Method::smote:
    case Method::ramo: {
      const auto counts = class_counts(d);
      const auto targets = compute_targets(d, plan);
      Dataset out = d;
      for (std::size_t c = 0; c < counts.size(); ++c) {
        if (targets[c] <= counts[c]) continue;
        const std::size_t n_new = targets[c] - counts[c];
        const std::uint64_t s = derive_seed(plan.seed, {c});
        append(out, plan.method == Method::smote ? smote_class(d, static_cast<int>(c), n_new, plan.k_smote, s)
                                                 : ramo_class(d, static_cast<int>(c), n_new, plan, s));
      }
      return out;
    }
  }
  return d;
}

}  // namespace dsimb

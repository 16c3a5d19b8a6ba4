#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dsimb/dataset.hpp"

namespace dsimb {

enum class Method { none, smote, ramo, random_balance, rus };
enum class Variant { equalize, double_minority, random };

/// Which neighbours count towards a RAMO member's difficulty.
enum class RamoDelta { other_classes, majority_only };

struct ResamplePlan {
  Method method = Method::none;
  Variant variant = Variant::equalize;
  std::size_t k_smote = 5;
  std::size_t k1 = 10;
  std::size_t k2 = 5;
  double alpha = 0.3;
  std::uint64_t seed = 0;
  RamoDelta ramo_delta = RamoDelta::other_classes;

  /// Throws std::invalid_argument on an inconsistent method/variant pair or a
  /// non-positive parameter.
  void validate() const;

  friend bool operator==(const ResamplePlan&, const ResamplePlan&) = default;
};

const char* to_string(Method m);
const char* to_string(Variant v);
Method parse_method(const std::string& s);
Variant parse_variant(const std::string& s);

/// Report labels in table column order: Ba, Ba-RM, Ba-RM100, Ba-SM, Ba-SM100,
/// Ba-RB. The "100" variants double each minority class, the others equalize.
struct NamedPlan {
  std::string name;
  ResamplePlan plan;
};
std::vector<NamedPlan> default_plans();
/// Looks a label up in default_plans(); throws std::invalid_argument.
ResamplePlan plan_by_name(const std::string& name);

struct Roles {
  int majority = -1;
  std::vector<int> minorities;  // ascending class index, present classes only
};

/// Majority is the most frequent class, ties to the lowest index.
Roles assign_roles(const Dataset& d);

/// Per-class target sizes for smote/ramo/rus/none. Absent classes keep 0.
std::vector<std::size_t> compute_targets(const Dataset& d, const ResamplePlan& plan);

/// Interpolates between x and its neighbour: numeric x + t (nb - x); nominal
/// x's category when t < 0.5, else the neighbour's.
std::vector<double> interpolate(const Dataset& d, std::span<const double> x, std::span<const double> nb, double t);

/// n_new synthetic members of class cls (same schema, no originals).
Dataset smote_class(const Dataset& d, int cls, std::size_t n_new, std::size_t k, std::uint64_t seed);

/// 1 / (1 + exp(-alpha * delta)).
double ramo_weight(std::size_t delta, double alpha);

/// Difficulty of every member of cls (in dataset order): foreign neighbours
/// among its k1 nearest instances of the whole dataset.
std::vector<std::size_t> ramo_deltas(const Dataset& d, int cls, std::size_t k1,
                                     RamoDelta mode = RamoDelta::other_classes);
std::vector<double> ramo_weights(const Dataset& d, int cls, std::size_t k1, double alpha,
                                 RamoDelta mode = RamoDelta::other_classes);

Dataset ramo_class(const Dataset& d, int cls, std::size_t n_new, const ResamplePlan& plan, std::uint64_t seed);

/// Random class sizes summing to |S| with every present class >= 2. The first
/// entry of the draw goes to the majority, the rest to minorities in index
/// order. Throws DataError when |S| < 2 * (present classes).
std::vector<std::size_t> random_balance_targets(const Dataset& d, std::uint64_t seed);

/// Shrinks classes above their target by random under-sampling and grows the
/// others with SMOTE. Kept originals come first, in input order.
Dataset resize_classes(const Dataset& d, std::span<const std::size_t> targets, std::size_t k, std::uint64_t seed);

Dataset random_balance(const Dataset& d, std::uint64_t seed, std::size_t k = 5);

Dataset apply(const Dataset& d, const ResamplePlan& plan);

}  // namespace dsimb

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsimb {

/// Raised for malformed input files. line() is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Raised when data violates a precondition (empty, single class, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AttributeKind { numeric, nominal };

struct AttributeSchema {
  std::string name;
  AttributeKind kind = AttributeKind::numeric;
  std::vector<std::string> nominal_values;  // nominal only
  double observed_min = 0.0;                // numeric only
  double observed_max = 0.0;

  bool is_nominal() const { return kind == AttributeKind::nominal; }
  friend bool operator==(const AttributeSchema&, const AttributeSchema&) = default;
};

enum class FileFormat { keel, csv };

/// Instances are stored row-major in one flat buffer. Nominal values are kept
/// as category indices (exact small integers in a double).
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::string name, std::vector<AttributeSchema> schema, std::vector<std::string> class_names);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const std::vector<AttributeSchema>& schema() const { return schema_; }
  const std::vector<std::string>& class_names() const { return class_names_; }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t num_attributes() const { return schema_.size(); }
  std::size_t num_classes() const { return class_names_.size(); }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * schema_.size(), schema_.size()};
  }
  int label(std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& values() const { return values_; }

  /// Appends one instance. Throws std::invalid_argument on arity or label errors.
  void add(std::span<const double> x, int label);
  void reserve(std::size_t n);

  /// Same schema and classes, no instances.
  Dataset empty_like() const;
  /// Instances at the given positions, repeats allowed, in that order.
  Dataset subset(std::span<const std::size_t> indices) const;

  /// Recomputes observed_min / observed_max of numeric attributes.
  void refresh_ranges();

  /// Checks type consistency of every value; throws DataError.
  void validate() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::string name_;
  std::vector<AttributeSchema> schema_;
  std::vector<std::string> class_names_;
  std::vector<double> values_;
  std::vector<int> labels_;
};

struct LoadedDataset {
  Dataset data;
  std::size_t imputed = 0;  // number of missing cells replaced
};

/// Loads a KEEL .dat or a CSV file. Missing cells ("?" or empty; KEEL also
/// "<null>") are imputed with the attribute mean (numeric) or mode (nominal).
/// Throws ParseError / DataError.
LoadedDataset load(const std::filesystem::path& path, FileFormat format);
/// Picks the format from the extension: .dat -> keel, everything else csv.
LoadedDataset load(const std::filesystem::path& path);
LoadedDataset parse_keel(std::istream& in, const std::string& name);
LoadedDataset parse_csv(std::istream& in, const std::string& name);

void write_csv(const Dataset& d, std::ostream& out);
void write_keel(const Dataset& d, std::ostream& out);
void save(const Dataset& d, const std::filesystem::path& path);

/// Per-class counts indexed by class index; declared but absent classes are 0.
std::vector<std::size_t> class_counts(const Dataset& d);

enum class ImbalanceGroup { low, medium, high };
const char* to_string(ImbalanceGroup g);

struct ImbalanceRatio {
  double ratio = 1.0;
  ImbalanceGroup group = ImbalanceGroup::low;
};

/// max / min over classes with at least one instance. low if IR < 3,
/// medium if 3 < IR < 9, high otherwise. Throws DataError with < 2 present classes.
ImbalanceRatio imbalance_ratio(std::span<const std::size_t> counts);
ImbalanceRatio imbalance_ratio(const Dataset& d);

/// Five repetitions of a stratified two-fold partition.
struct SplitPlan {
  static constexpr std::size_t repetitions = 5;
  std::array<std::array<std::vector<std::size_t>, 2>, repetitions> folds;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  const std::vector<std::size_t>& test(std::size_t rep, std::size_t fold) const { return folds[rep][fold]; }
  const std::vector<std::size_t>& train(std::size_t rep, std::size_t fold) const { return folds[rep][1 - fold]; }

  friend bool operator==(const SplitPlan&, const SplitPlan&) = default;
};

/// Deterministic in (d, seed). Singleton classes go wholly to one randomly
/// chosen fold and add a warning.
SplitPlan make_5x2_split(const Dataset& d, std::uint64_t seed);

}  // namespace dsimb

#include "dsimb/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "dsimb/rng.hpp"

namespace dsimb {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::optional<double> parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  // from_chars rejects a leading '.', which KEEL files use (".28")
  std::string buf;
  if (!s.empty() && (s.front() == '.' || (s.front() == '-' && s.size() > 1 && s[1] == '.'))) {
    buf = s.front() == '-' ? "-0" + std::string(s.substr(1)) : "0" + std::string(s);
    s = buf;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

bool is_missing(const std::string& s) { return s.empty() || s == "?" || s == "<null>"; }

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  char quote = 0;
  for (char c : s) {
    if (quote) {
      if (c == quote) quote = 0;
      cur += c;
    } else if (c == '\'' || c == '"') {
      quote = c;
      cur += c;
    } else if (c == ',') {
      out.push_back(unquote(trim(cur)));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(unquote(trim(cur)));
  return out;
}

// Raw table shared by both readers: cells as text, NaN marks a missing cell
// after conversion.
struct RawColumn {
  std::string name;
  AttributeKind kind = AttributeKind::numeric;
  std::vector<std::string> values;  // declared nominal values
};

LoadedDataset finish(const std::string& name, std::vector<RawColumn> inputs, std::vector<std::string> class_names,
                     std::vector<double> cells, std::vector<int> labels) {
  const std::size_t n_attr = inputs.size();
  const std::size_t n = labels.size();
  if (n == 0) throw DataError("empty dataset: " + name);

  std::size_t imputed = 0;
  for (std::size_t a = 0; a < n_attr; ++a) {
    double fill = 0.0;
    if (inputs[a].kind == AttributeKind::numeric) {
      double sum = 0.0;
      std::size_t cnt = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = cells[i * n_attr + a];
        if (!std::isnan(v)) {
          sum += v;
          ++cnt;
        }
      }
      fill = cnt ? sum / static_cast<double>(cnt) : 0.0;
    } else {
      std::vector<std::size_t> freq(inputs[a].values.size(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        const double v = cells[i * n_attr + a];
        if (!std::isnan(v)) ++freq[static_cast<std::size_t>(v)];
      }
      fill = static_cast<double>(std::max_element(freq.begin(), freq.end()) - freq.begin());
    }
    for (std::size_t i = 0; i < n; ++i) {
      double& v = cells[i * n_attr + a];
      if (std::isnan(v)) {
        v = fill;
        ++imputed;
      }
    }
  }

  std::vector<AttributeSchema> schema;
  schema.reserve(n_attr);
  for (auto& c : inputs) {
    AttributeSchema s;
    s.name = std::move(c.name);
    s.kind = c.kind;
    if (s.kind == AttributeKind::nominal) s.nominal_values = std::move(c.values);
    schema.push_back(std::move(s));
  }
  Dataset d(name, std::move(schema), std::move(class_names));
  d.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.add(std::span<const double>(cells.data() + i * n_attr, n_attr), labels[i]);
  }
  d.refresh_ranges();

  std::size_t present = 0;
  for (std::size_t c : class_counts(d)) present += c > 0;
  if (present < 2) throw DataError("single-class dataset: " + name);
  return {std::move(d), imputed};
}

// One CSV record; handles quoted fields with embedded commas, quotes and
// newlines. Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line) {
  fields.clear();
  std::string cur;
  bool in_quotes = false, any = false, was_quoted = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          cur += '"';
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? cur : trim(cur));
      cur.clear();
      was_quoted = false;
    } else if (c == '\n') {
      ++line;
      break;
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted field", line);
  if (!any) return false;
  fields.push_back(was_quoted ? cur : trim(cur));
  return true;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos && trim(s) == s) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string keel_name(const std::string& s) {
  if (s.find_first_of(" \t{},'") == std::string::npos) return s;
  return "'" + s + "'";
}

}  // namespace

Dataset::Dataset(std::string name, std::vector<AttributeSchema> schema, std::vector<std::string> class_names)
    : name_(std::move(name)), schema_(std::move(schema)), class_names_(std::move(class_names)) {
  for (const auto& a : schema_) {
    if (a.is_nominal() == a.nominal_values.empty()) {
      throw std::invalid_argument("attribute '" + a.name + "': nominal_values must be non-empty iff nominal");
    }
  }
}

void Dataset::add(std::span<const double> x, int label) {
  if (x.size() != schema_.size()) {
    throw std::invalid_argument("instance has " + std::to_string(x.size()) + " values, schema has " +
                                std::to_string(schema_.size()));
  }
  if (label < 0 || static_cast<std::size_t>(label) >= class_names_.size()) {
    throw std::invalid_argument("class index " + std::to_string(label) + " out of range");
  }
  for (std::size_t a = 0; a < x.size(); ++a) {
    const double v = x[a];
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value for '" + schema_[a].name + "'");
    if (schema_[a].is_nominal() &&
        (v < 0 || v != std::floor(v) || static_cast<std::size_t>(v) >= schema_[a].nominal_values.size())) {
      throw std::invalid_argument("invalid category index for '" + schema_[a].name + "'");
    }
  }
  values_.insert(values_.end(), x.begin(), x.end());
  labels_.push_back(label);
}

void Dataset::reserve(std::size_t n) {
  values_.reserve(n * schema_.size());
  labels_.reserve(n);
}

Dataset Dataset::empty_like() const {
  Dataset d;
  d.name_ = name_;
  d.schema_ = schema_;
  d.class_names_ = class_names_;
  return d;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset d = empty_like();
  d.reserve(indices.size());
  for (std::size_t i : indices) {
    auto r = row(i);
    d.values_.insert(d.values_.end(), r.begin(), r.end());
    d.labels_.push_back(labels_[i]);
  }
  return d;
}

void Dataset::refresh_ranges() {
  const std::size_t m = schema_.size();
  for (std::size_t a = 0; a < m; ++a) {
    if (schema_[a].is_nominal()) continue;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      lo = std::min(lo, values_[i * m + a]);
      hi = std::max(hi, values_[i * m + a]);
    }
    if (labels_.empty()) lo = hi = 0.0;
    schema_[a].observed_min = lo;
    schema_[a].observed_max = hi;
  }
}

void Dataset::validate() const {
  const std::size_t m = schema_.size();
  if (values_.size() != labels_.size() * m) throw DataError("value buffer does not match instance count");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0 || static_cast<std::size_t>(labels_[i]) >= class_names_.size()) {
      throw DataError("class index out of range at instance " + std::to_string(i));
    }
    for (std::size_t a = 0; a < m; ++a) {
      const double v = values_[i * m + a];
      if (!std::isfinite(v)) throw DataError("non-finite value at instance " + std::to_string(i));
      if (schema_[a].is_nominal() &&
          (v < 0 || v != std::floor(v) || static_cast<std::size_t>(v) >= schema_[a].nominal_values.size())) {
        throw DataError("bad category at instance " + std::to_string(i));
      }
    }
  }
  for (const auto& a : schema_) {
    if (!a.is_nominal() && a.observed_min > a.observed_max) throw DataError("observed_min > observed_max");
  }
}

LoadedDataset parse_keel(std::istream& in, const std::string& name) {
  struct Decl {
    RawColumn col;
    std::size_t line = 0;
  };
  std::vector<Decl> attrs;
  std::vector<std::string> inputs, outputs;
  std::string relation = name;
  std::string text;
  std::size_t line = 0;
  bool in_data = false;

  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;

  while (std::getline(in, text)) {
    ++line;
    std::string s = trim(text);
    if (s.empty() || s.front() == '%') continue;
    if (in_data) {
      rows.push_back(split_commas(s));
      row_lines.push_back(line);
      continue;
    }
    if (s.front() != '@') throw ParseError("expected a header directive", line);
    const std::size_t sp = s.find_first_of(" \t");
    const std::string directive = lower(s.substr(0, sp));
    const std::string rest = sp == std::string::npos ? "" : trim(s.substr(sp));
    if (directive == "@relation") {
      relation = unquote(rest);
    } else if (directive == "@attribute") {
      Decl d;
      d.line = line;
      std::size_t pos = 0;
      if (!rest.empty() && (rest[0] == '\'' || rest[0] == '"')) {
        const std::size_t close = rest.find(rest[0], 1);
        if (close == std::string::npos) throw ParseError("unterminated attribute name", line);
        d.col.name = rest.substr(1, close - 1);
        pos = close + 1;
      } else {
        pos = rest.find_first_of(" \t{");
        d.col.name = rest.substr(0, pos);
      }
      if (d.col.name.empty()) throw ParseError("attribute without a name", line);
      std::string type = pos == std::string::npos ? "" : trim(rest.substr(pos));
      if (!type.empty() && type.front() == '{') {
        const std::size_t close = type.rfind('}');
        if (close == std::string::npos) throw ParseError("unterminated nominal value list", line);
        d.col.kind = AttributeKind::nominal;
        d.col.values = split_commas(type.substr(1, close - 1));
        if (d.col.values.empty() || (d.col.values.size() == 1 && d.col.values[0].empty())) {
          throw ParseError("empty nominal value list", line);
        }
      } else {
        const std::string t = lower(type.substr(0, type.find_first_of(" \t[")));
        if (t != "real" && t != "integer" && t != "numeric") {
          throw ParseError("unknown attribute type '" + t + "'", line);
        }
      }
      attrs.push_back(std::move(d));
    } else if (directive == "@inputs" || directive == "@input") {
      inputs = split_commas(rest);
    } else if (directive == "@outputs" || directive == "@output") {
      outputs = split_commas(rest);
    } else if (directive == "@data") {
      in_data = true;
    } else {
      throw ParseError("unknown directive " + directive, line);
    }
  }
  if (!in_data) throw ParseError("missing @data section", line);
  if (attrs.size() < 2) throw ParseError("need at least one input attribute and a class", 0);

  auto find_attr = [&](const std::string& n) -> std::size_t {
    for (std::size_t i = 0; i < attrs.size(); ++i)
      if (attrs[i].col.name == n) return i;
    throw ParseError("unknown attribute '" + n + "' in @inputs/@outputs", 0);
  };
  const std::size_t class_pos = outputs.empty() ? attrs.size() - 1 : find_attr(outputs.front());
  std::vector<std::size_t> input_pos;
  if (!inputs.empty()) {
    for (const auto& n : inputs) input_pos.push_back(find_attr(n));
  } else {
    for (std::size_t i = 0; i < attrs.size(); ++i)
      if (i != class_pos) input_pos.push_back(i);
  }

  // Class labels: declared values for a nominal class, otherwise the distinct
  // observed values in numeric order.
  std::vector<std::string> class_names;
  std::unordered_map<std::string, int> class_index;
  const RawColumn& class_col = attrs[class_pos].col;
  if (class_col.kind == AttributeKind::nominal) {
    class_names = class_col.values;
  } else {
    std::map<double, std::string> distinct;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != attrs.size()) continue;  // reported below
      const std::string& v = rows[r][class_pos];
      if (is_missing(v)) continue;
      auto x = parse_real(v);
      if (!x) throw ParseError("non-numeric class value '" + v + "'", row_lines[r]);
      distinct.emplace(*x, v);
    }
    for (auto& [k, v] : distinct) class_names.push_back(v);
  }
  for (std::size_t i = 0; i < class_names.size(); ++i) class_index[class_names[i]] = static_cast<int>(i);
  std::vector<std::unordered_map<std::string, double>> cat_index(attrs.size());
  for (std::size_t a = 0; a < attrs.size(); ++a) {
    for (std::size_t v = 0; v < attrs[a].col.values.size(); ++v) {
      cat_index[a][attrs[a].col.values[v]] = static_cast<double>(v);
    }
  }

  std::vector<double> cells;
  std::vector<int> labels;
  cells.reserve(rows.size() * input_pos.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() != attrs.size()) {
      throw ParseError("expected " + std::to_string(attrs.size()) + " values, found " + std::to_string(f.size()),
                       row_lines[r]);
    }
    const std::string& cv = f[class_pos];
    if (is_missing(cv)) throw ParseError("missing class value", row_lines[r]);
    int label = -1;
    if (class_col.kind == AttributeKind::nominal) {
      auto it = class_index.find(cv);
      if (it == class_index.end()) throw ParseError("undeclared class value '" + cv + "'", row_lines[r]);
      label = it->second;
    } else {
      const double x = *parse_real(cv);
      for (std::size_t c = 0; c < class_names.size(); ++c) {
        if (*parse_real(class_names[c]) == x) label = static_cast<int>(c);
      }
    }
    labels.push_back(label);
    for (std::size_t a : input_pos) {
      const std::string& v = f[a];
      if (is_missing(v)) {
        cells.push_back(std::numeric_limits<double>::quiet_NaN());
      } else if (attrs[a].col.kind == AttributeKind::nominal) {
        auto it = cat_index[a].find(v);
        if (it == cat_index[a].end()) {
          throw ParseError("undeclared value '" + v + "' for attribute '" + attrs[a].col.name + "'", row_lines[r]);
        }
        cells.push_back(it->second);
      } else {
        auto x = parse_real(v);
        if (!x) throw ParseError("invalid number '" + v + "'", row_lines[r]);
        cells.push_back(*x);
      }
    }
  }

  std::vector<RawColumn> cols;
  for (std::size_t a : input_pos) cols.push_back(attrs[a].col);
  return finish(relation, std::move(cols), std::move(class_names), std::move(cells), std::move(labels));
}

LoadedDataset parse_csv(std::istream& in, const std::string& name) {
  std::size_t line = 1;
  std::vector<std::string> header;
  if (!read_csv_record(in, header, line)) throw DataError("empty dataset: " + name);
  const std::size_t width = header.size();
  if (width < 2) throw ParseError("need at least one attribute column and a class column", 1);

  std::size_t class_col = width - 1;
  for (std::size_t i = 0; i < width; ++i) {
    if (lower(header[i]) == "class") {
      class_col = i;
      break;
    }
  }

  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;
  std::vector<std::string> fields;
  for (;;) {
    const std::size_t start = line;
    if (!read_csv_record(in, fields, line)) break;
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, found " + std::to_string(fields.size()),
                       start);
    }
    rows.push_back(fields);
    row_lines.push_back(start);
  }

  std::vector<RawColumn> cols;
  std::vector<std::size_t> col_pos;
  for (std::size_t c = 0; c < width; ++c) {
    if (c == class_col) continue;
    RawColumn col;
    col.name = header[c];
    for (const auto& r : rows) {
      if (!is_missing(r[c]) && !parse_real(r[c])) {
        col.kind = AttributeKind::nominal;
        break;
      }
    }
    if (col.kind == AttributeKind::nominal) {
      for (const auto& r : rows) {
        if (!is_missing(r[c]) && std::find(col.values.begin(), col.values.end(), r[c]) == col.values.end()) {
          col.values.push_back(r[c]);
        }
      }
    }
    cols.push_back(std::move(col));
    col_pos.push_back(c);
  }

  std::vector<std::string> class_names;
  bool numeric_classes = true;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string& v = rows[r][class_col];
    if (is_missing(v)) throw ParseError("missing class value", row_lines[r]);
    if (!parse_real(v)) numeric_classes = false;
    if (std::find(class_names.begin(), class_names.end(), v) == class_names.end()) class_names.push_back(v);
  }
  if (numeric_classes) {
    std::stable_sort(class_names.begin(), class_names.end(),
                     [](const std::string& a, const std::string& b) { return *parse_real(a) < *parse_real(b); });
  }

  std::vector<double> cells;
  std::vector<int> labels;
  for (const auto& r : rows) {
    labels.push_back(static_cast<int>(std::find(class_names.begin(), class_names.end(), r[class_col]) -
                                      class_names.begin()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::string& v = r[col_pos[k]];
      if (is_missing(v)) {
        cells.push_back(std::numeric_limits<double>::quiet_NaN());
      } else if (cols[k].kind == AttributeKind::nominal) {
        cells.push_back(static_cast<double>(std::find(cols[k].values.begin(), cols[k].values.end(), v) -
                                            cols[k].values.begin()));
      } else {
        cells.push_back(*parse_real(v));
      }
    }
  }
  return finish(name, std::move(cols), std::move(class_names), std::move(cells), std::move(labels));
}

LoadedDataset load(const std::filesystem::path& path, FileFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  const std::string name = path.stem().string();
  return format == FileFormat::keel ? parse_keel(in, name) : parse_csv(in, name);
}

LoadedDataset load(const std::filesystem::path& path) {
  return load(path, lower(path.extension().string()) == ".dat" ? FileFormat::keel : FileFormat::csv);
}

void write_csv(const Dataset& d, std::ostream& out) {
  const auto& schema = d.schema();
  for (const auto& a : schema) out << csv_field(a.name) << ',';
  out << "class\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto r = d.row(i);
    for (std::size_t a = 0; a < schema.size(); ++a) {
      if (schema[a].is_nominal()) out << csv_field(schema[a].nominal_values[static_cast<std::size_t>(r[a])]);
      else out << format_real(r[a]);
      out << ',';
    }
    out << csv_field(d.class_names()[static_cast<std::size_t>(d.label(i))]) << '\n';
  }
}

void write_keel(const Dataset& d, std::ostream& out) {
  out << "@relation " << keel_name(d.name().empty() ? "data" : d.name()) << '\n';
  std::string inputs;
  for (const auto& a : d.schema()) {
    out << "@attribute " << keel_name(a.name) << ' ';
    if (a.is_nominal()) {
      out << '{';
      for (std::size_t v = 0; v < a.nominal_values.size(); ++v) {
        out << (v ? ", " : "") << a.nominal_values[v];
      }
      out << "}\n";
    } else {
      out << "real [" << format_real(a.observed_min) << ", " << format_real(a.observed_max) << "]\n";
    }
    inputs += (inputs.empty() ? "" : ", ") + keel_name(a.name);
  }
  out << "@attribute class {";
  for (std::size_t c = 0; c < d.num_classes(); ++c) out << (c ? ", " : "") << d.class_names()[c];
  out << "}\n@inputs " << inputs << "\n@outputs class\n@data\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto r = d.row(i);
    for (std::size_t a = 0; a < r.size(); ++a) {
      const auto& s = d.schema()[a];
      out << (s.is_nominal() ? s.nominal_values[static_cast<std::size_t>(r[a])] : format_real(r[a])) << ", ";
    }
    out << d.class_names()[static_cast<std::size_t>(d.label(i))] << '\n';
  }
}

void save(const Dataset& d, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  if (lower(path.extension().string()) == ".dat") write_keel(d, out);
  else write_csv(d, out);
}

std::vector<std::size_t> class_counts(const Dataset& d) {
  std::vector<std::size_t> counts(d.num_classes(), 0);
  for (int y : d.labels()) ++counts[static_cast<std::size_t>(y)];
  return counts;
}

const char* to_string(ImbalanceGroup g) {
  switch (g) {
    case ImbalanceGroup::low: return "low";
    case ImbalanceGroup::medium: return "medium";
    case ImbalanceGroup::high: return "high";
  }
  return "?";
}

ImbalanceRatio imbalance_ratio(std::span<const std::size_t> counts) {
  std::size_t lo = 0, hi = 0, present = 0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    lo = present ? std::min(lo, c) : c;
    hi = std::max(hi, c);
    ++present;
  }
  if (present < 2) throw DataError("imbalance ratio needs at least two present classes");
  ImbalanceRatio ir;
  ir.ratio = static_cast<double>(hi) / static_cast<double>(lo);
  if (ir.ratio < 3.0) ir.group = ImbalanceGroup::low;
  else if (ir.ratio > 3.0 && ir.ratio < 9.0) ir.group = ImbalanceGroup::medium;
  else ir.group = ImbalanceGroup::high;
  return ir;
}

ImbalanceRatio imbalance_ratio(const Dataset& d) { return imbalance_ratio(class_counts(d)); }

SplitPlan make_5x2_split(const Dataset& d, std::uint64_t seed) {
  SplitPlan plan;
  plan.seed = seed;
  std::vector<std::vector<std::size_t>> members(d.num_classes());
  for (std::size_t i = 0; i < d.size(); ++i) members[static_cast<std::size_t>(d.label(i))].push_back(i);
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (members[c].size() == 1) {
      plan.warnings.push_back("class '" + d.class_names()[c] +
                              "' has a single instance; it is placed in one fold per repetition");
    }
  }

  for (std::size_t rep = 0; rep < SplitPlan::repetitions; ++rep) {
    Rng rng(derive_seed(seed, {rep}));
    auto& folds = plan.folds[rep];
    for (const auto& m : members) {
      if (m.empty()) continue;
      std::vector<std::size_t> order = m;
      rng.shuffle(order);
      // the larger half of an odd class goes to the currently smaller fold
      std::size_t first;
      if (folds[0].size() != folds[1].size()) first = folds[0].size() < folds[1].size() ? 0 : 1;
      else first = static_cast<std::size_t>(rng.below(2));
      const std::size_t take = order.size() - order.size() / 2;
      for (std::size_t i = 0; i < order.size(); ++i) folds[i < take ? first : 1 - first].push_back(order[i]);
    }
    std::sort(folds[0].begin(), folds[0].end());
    std::sort(folds[1].begin(), folds[1].end());
  }
  return plan;
}

}  // namespace dsimb

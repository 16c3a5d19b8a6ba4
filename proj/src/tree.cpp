#include "dsimb/tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dsimb {

namespace {

constexpr double eps = 1e-12;

double entropy(std::span<const std::size_t> counts, std::size_t n) {
  if (n == 0) return 0.0;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h;
}

double split_info(std::span<const std::size_t> sizes, std::size_t n) { return entropy(sizes, n); }

std::vector<std::size_t> tally(const Dataset& d, std::span<const std::size_t> rows) {
  std::vector<std::size_t> c(d.num_classes(), 0);
  for (std::size_t i : rows) ++c[static_cast<std::size_t>(d.label(i))];
  return c;
}

std::string fmt_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw std::runtime_error("bad number in tree: " + s);
  return v;
}

}  // namespace

std::vector<SplitCandidate> candidate_splits(const Dataset& d, std::span<const std::size_t> rows,
                                             const std::vector<char>& used) {
  const std::size_t n = rows.size();
  const std::size_t C = d.num_classes();
  const auto parent_counts = tally(d, rows);
  const double h = entropy(parent_counts, n);
  std::vector<SplitCandidate> out;

  for (std::size_t a = 0; a < d.num_attributes(); ++a) {
    const auto& attr = d.schema()[a];
    if (attr.is_nominal()) {
      if (used[a]) continue;
      const std::size_t V = attr.nominal_values.size();
      std::vector<std::size_t> counts(V * C, 0), sizes(V, 0);
      for (std::size_t i : rows) {
        const auto v = static_cast<std::size_t>(d.row(i)[a]);
        ++counts[v * C + static_cast<std::size_t>(d.label(i))];
        ++sizes[v];
      }
      if (std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; }) < 2) continue;
      double rest = 0.0;
      for (std::size_t v = 0; v < V; ++v) {
        rest += static_cast<double>(sizes[v]) / static_cast<double>(n) *
                entropy(std::span<const std::size_t>(counts.data() + v * C, C), sizes[v]);
      }
      SplitCandidate s;
      s.attribute = a;
      s.nominal = true;
      s.gain = h - rest;
      s.gain_ratio = s.gain / split_info(sizes, n);
      out.push_back(s);
      continue;
    }

    std::vector<std::pair<double, int>> col;
    col.reserve(n);
    for (std::size_t i : rows) col.emplace_back(d.row(i)[a], d.label(i));
    std::sort(col.begin(), col.end());
    if (col.front().first == col.back().first) continue;

    std::vector<std::size_t> left(C, 0), right = parent_counts;
    bool found = false;
    SplitCandidate best;
    best.attribute = a;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      ++left[static_cast<std::size_t>(col[i].second)];
      --right[static_cast<std::size_t>(col[i].second)];
      if (col[i].first == col[i + 1].first) continue;
      const std::size_t nl = i + 1, nr = n - nl;
      const double gain = h - (static_cast<double>(nl) * entropy(left, nl) + static_cast<double>(nr) * entropy(right, nr)) /
                                  static_cast<double>(n);
      if (found && gain <= best.gain + eps) continue;
      found = true;
      double mid = col[i].first + (col[i + 1].first - col[i].first) / 2.0;
      if (mid >= col[i + 1].first) mid = col[i].first;
      best.threshold = mid;
      best.gain = gain;
      const std::size_t sizes[2] = {nl, nr};
      best.gain_ratio = gain / split_info(sizes, n);
    }
    out.push_back(best);
  }
  return out;
}

int choose_split(const std::vector<SplitCandidate>& cands, bool split_without_gain) {
  if (cands.empty()) return -1;
  double mean = 0.0;
  for (const auto& c : cands) mean += c.gain;
  mean /= static_cast<double>(cands.size());
  int best = -1;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const auto& c = cands[i];
    if (c.gain <= eps || c.gain < mean - eps) continue;
    if (best < 0 || c.gain_ratio > cands[static_cast<std::size_t>(best)].gain_ratio + eps) best = static_cast<int>(i);
  }
  if (best < 0 && split_without_gain) best = 0;
  return best;
}

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& d, TrainedTree& t, TreeOptions o) : d_(d), t_(t), opt_(o), used_(d.num_attributes(), 0) {}

  void grow(std::size_t node, std::vector<std::size_t> rows) {
    const std::size_t C = d_.num_classes();
    const auto counts = tally(d_, rows);
    for (std::size_t c = 0; c < C; ++c) t_.counts_[node * C + c] = static_cast<std::uint32_t>(counts[c]);
    t_.nodes_[node].total = static_cast<std::uint32_t>(rows.size());

    const std::size_t present = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; });
    if (rows.size() < 2 || present <= 1) return;
    const auto cands = candidate_splits(d_, rows, used_);
    const int pick = choose_split(cands, opt_.split_without_gain);
    if (pick < 0) return;
    const SplitCandidate& s = cands[static_cast<std::size_t>(pick)];

    std::vector<std::vector<std::size_t>> parts;
    if (s.nominal) {
      parts.resize(d_.schema()[s.attribute].nominal_values.size());
      for (std::size_t i : rows) parts[static_cast<std::size_t>(d_.row(i)[s.attribute])].push_back(i);
    } else {
      parts.resize(2);
      for (std::size_t i : rows) parts[d_.row(i)[s.attribute] <= s.threshold ? 0 : 1].push_back(i);
    }
    rows.clear();
    rows.shrink_to_fit();

    const auto first = static_cast<std::uint32_t>(t_.nodes_.size());
    std::uint32_t def = 0;
    for (std::uint32_t b = 1; b < parts.size(); ++b) {
      if (parts[b].size() > parts[def].size()) def = b;
    }
    {
      auto& nd = t_.nodes_[node];
      nd.attribute = static_cast<int>(s.attribute);
      nd.threshold = s.nominal ? 0.0 : s.threshold;
      nd.first_child = first;
      nd.num_children = static_cast<std::uint32_t>(parts.size());
      nd.default_child = def;
    }
    t_.nodes_.resize(t_.nodes_.size() + parts.size());
    t_.counts_.resize(t_.nodes_.size() * C, 0);

    if (s.nominal) used_[s.attribute] = 1;
    for (std::size_t b = 0; b < parts.size(); ++b) grow(first + b, std::move(parts[b]));
    if (s.nominal) used_[s.attribute] = 0;
  }

 private:
  const Dataset& d_;
  TrainedTree& t_;
  TreeOptions opt_;
  std::vector<char> used_;
};

TrainedTree TrainedTree::fit(const Dataset& train, std::uint64_t /*seed*/, TreeOptions options) {
  if (train.empty()) throw DataError("cannot fit a tree on an empty training set");
  TrainedTree t;
  t.num_classes_ = train.num_classes();
  t.nominal_.resize(train.num_attributes());
  for (std::size_t a = 0; a < train.num_attributes(); ++a) t.nominal_[a] = train.schema()[a].is_nominal();
  t.nodes_.resize(1);
  t.counts_.assign(t.num_classes_, 0);
  std::vector<std::size_t> rows(train.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  TreeBuilder(train, t, options).grow(0, std::move(rows));
  return t;
}

std::size_t TrainedTree::leaf(std::span<const double> x) const {
  if (x.size() != nominal_.size()) throw std::invalid_argument("instance width does not match the tree schema");
  std::size_t n = 0;
  while (nodes_[n].attribute >= 0) {
    const Node& nd = nodes_[n];
    const double v = x[static_cast<std::size_t>(nd.attribute)];
    std::size_t branch;
    if (nominal_[static_cast<std::size_t>(nd.attribute)]) {
      branch = v >= 0 && v < nd.num_children && v == std::floor(v) ? static_cast<std::size_t>(v) : nd.default_child;
    } else {
      branch = v <= nd.threshold ? 0 : 1;
    }
    n = nd.first_child + branch;
  }
  return n;
}

std::vector<double> TrainedTree::leaf_proba(std::size_t node) const {
  std::vector<double> p(num_classes_);
  const double denom = static_cast<double>(nodes_[node].total) + static_cast<double>(num_classes_);
  auto c = counts(node);
  for (std::size_t k = 0; k < num_classes_; ++k) p[k] = (static_cast<double>(c[k]) + 1.0) / denom;
  return p;
}

std::vector<double> TrainedTree::predict_proba(std::span<const double> x) const { return leaf_proba(leaf(x)); }

int TrainedTree::predict(std::span<const double> x) const {
  auto c = counts(leaf(x));
  return static_cast<int>(std::max_element(c.begin(), c.end()) - c.begin());
}

std::size_t TrainedTree::depth() const {
  std::vector<std::size_t> dep(nodes_.size(), 0);
  std::size_t best = 0;
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    best = std::max(best, dep[n]);
    for (std::uint32_t b = 0; b < nodes_[n].num_children; ++b) dep[nodes_[n].first_child + b] = dep[n] + 1;
  }
  return best;
}

std::size_t TrainedTree::num_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.attribute < 0; }));
}

void TrainedTree::write(std::ostream& out) const {
  out << "dsimb-tree v1\n";
  out << "classes " << num_classes_ << "\n";
  out << "attributes " << nominal_.size() << ' ';
  for (char k : nominal_) out << (k ? 'c' : 'n');
  out << "\nnodes " << nodes_.size() << "\n";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    out << n.attribute << ' ' << fmt_double(n.threshold) << ' ' << n.first_child << ' ' << n.num_children << ' '
        << n.default_child << ' ' << n.total;
    for (std::uint32_t c : counts(i)) out << ' ' << c;
    out << '\n';
  }
}

TrainedTree TrainedTree::read(std::istream& in) {
  auto fail = [](const std::string& what) { throw std::runtime_error("malformed tree: " + what); };
  std::string line, tok;
  if (!std::getline(in, line) || line != "dsimb-tree v1") fail("unsupported header");
  TrainedTree t;
  std::size_t m = 0, n = 0;
  std::string kinds;
  if (!(in >> tok >> t.num_classes_) || tok != "classes") fail("classes");
  if (!(in >> tok >> m) || tok != "attributes") fail("attributes");
  if (m > 0 && !(in >> kinds)) fail("attribute kinds");
  if (kinds.size() != m) fail("attribute kinds");
  for (char k : kinds) t.nominal_.push_back(k == 'c');
  if (!(in >> tok >> n) || tok != "nodes" || n == 0) fail("nodes");
  t.nodes_.resize(n);
  t.counts_.resize(n * t.num_classes_);
  for (std::size_t i = 0; i < n; ++i) {
    Node& nd = t.nodes_[i];
    if (!(in >> nd.attribute >> tok >> nd.first_child >> nd.num_children >> nd.default_child >> nd.total)) {
      fail("node " + std::to_string(i));
    }
    nd.threshold = parse_double(tok);
    for (std::size_t c = 0; c < t.num_classes_; ++c) {
      if (!(in >> t.counts_[i * t.num_classes_ + c])) fail("counts of node " + std::to_string(i));
    }
    if (nd.attribute >= static_cast<int>(m) || (nd.attribute >= 0 && nd.first_child + nd.num_children > n)) {
      fail("node " + std::to_string(i) + " out of range");
    }
  }
  std::getline(in, line);
  return t;
}

std::string TrainedTree::to_string() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

TrainedTree TrainedTree::from_string(const std::string& s) {
  std::istringstream is(s);
  return read(is);
}

}  // namespace dsimb

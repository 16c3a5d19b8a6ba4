#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "dsimb/dataset.hpp"

using namespace dsimb;

namespace {

Dataset labelled(const std::vector<int>& labels, std::size_t classes) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < classes; ++c) names.push_back("c" + std::to_string(c));
  Dataset d("t", {{"x", AttributeKind::numeric, {}, 0, 0}}, names);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double x = static_cast<double>(i);
    d.add(std::span<const double>(&x, 1), labels[i]);
  }
  d.refresh_ranges();
  return d;
}

LoadedDataset csv(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in, "mem");
}

}  // namespace

TEST_CASE("wine loads with its known shape") {
  const auto w = load(std::string(DSIMB_DATA_DIR) + "/wine.dat");
  CHECK(w.data.size() == 178);
  CHECK(w.data.num_attributes() == 13);
  CHECK(w.data.num_classes() == 3);
  for (const auto& a : w.data.schema()) CHECK_FALSE(a.is_nominal());
  const auto counts = class_counts(w.data);
  CHECK(counts[0] + counts[1] + counts[2] == 178);
  const auto ir = imbalance_ratio(w.data);
  CHECK(ir.ratio == doctest::Approx(1.48).epsilon(0.01 / 1.48));
  CHECK(ir.group == ImbalanceGroup::low);
  CHECK(w.imputed == 0);
}

TEST_CASE("zoo loads with its known shape") {
  const auto z = load(std::string(DSIMB_DATA_DIR) + "/zoo.dat");
  CHECK(z.data.size() == 101);
  CHECK(z.data.num_attributes() == 16);
  CHECK(z.data.num_classes() == 7);
}

TEST_CASE("csv infers numeric and nominal columns") {
  const auto r = csv("a,b,class\n1,x,A\n2,y,B\n");
  const Dataset& d = r.data;
  CHECK(d.size() == 2);
  REQUIRE(d.num_attributes() == 2);
  CHECK_FALSE(d.schema()[0].is_nominal());
  CHECK(d.schema()[1].is_nominal());
  CHECK(d.num_classes() == 2);
  CHECK(d.schema()[0].observed_min == 1.0);
  CHECK(d.schema()[0].observed_max == 2.0);
}

TEST_CASE("csv class column by name, quoting and imputation") {
  const auto r = csv("class,\"w, h\",c\nA,1,red\nB,?,\nA,3,red\nB,5,blue\n");
  const Dataset& d = r.data;
  CHECK(d.schema()[0].name == "w, h");
  CHECK(d.class_names() == std::vector<std::string>{"A", "B"});
  CHECK(r.imputed == 2);
  CHECK(d.row(1)[0] == doctest::Approx(3.0));  // mean of 1, 3, 5
  CHECK(d.row(1)[1] == 0.0);                   // mode "red"
}

TEST_CASE("parse errors carry line numbers") {
  try {
    csv("a,class\n1,A\n2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(csv("a,class\n1,A\n2,?\n"), ParseError);
  CHECK_THROWS_AS(csv("a,class\n"), DataError);
  CHECK_THROWS_AS(csv("a,class\n1,A\n2,A\n"), DataError);

  std::istringstream keel("@relation r\n@attribute x real\n@attribute c {a,b}\n@data\n1,a\nfoo,b\n");
  try {
    parse_keel(keel, "r");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
  }
}

TEST_CASE("keel header handling") {
  std::istringstream in(
      "@relation demo\n"
      "@attribute 'a b' real [0.0, 1.0]\n"
      "@attribute Class {p, n}\n"
      "@attribute colour {red, green}\n"
      "@inputs 'a b', colour\n"
      "@outputs Class\n"
      "@data\n"
      "0.5, p, green\n"
      ".25, n, <null>\n"
      "?, n, green\n");
  const auto r = parse_keel(in, "x");
  const Dataset& d = r.data;
  CHECK(d.name() == "demo");
  CHECK(d.num_attributes() == 2);
  CHECK(d.schema()[0].name == "a b");
  CHECK(d.schema()[1].nominal_values == std::vector<std::string>{"red", "green"});
  CHECK(d.labels() == std::vector<int>{0, 1, 1});
  CHECK(r.imputed == 2);
  CHECK(d.row(2)[0] == doctest::Approx(0.375));
  CHECK(d.row(1)[1] == 1.0);
}

TEST_CASE("class_counts keeps declared but absent classes") {
  const auto d = labelled({0, 0, 1}, 3);
  CHECK(class_counts(d) == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("imbalance ratio and groups") {
  const std::vector<std::size_t> a{100, 50, 10}, b{5, 5}, c{30, 10}, e{3, 1, 0}, f{80, 10}, g{9, 1};
  CHECK(imbalance_ratio(a).ratio == 10.0);
  CHECK(imbalance_ratio(a).group == ImbalanceGroup::high);
  CHECK(imbalance_ratio(b).ratio == 1.0);
  CHECK(imbalance_ratio(b).group == ImbalanceGroup::low);
  CHECK(imbalance_ratio(c).group == ImbalanceGroup::high);  // exactly 3 falls through to high
  CHECK(imbalance_ratio(e).ratio == 3.0);
  CHECK(imbalance_ratio(f).group == ImbalanceGroup::medium);
  CHECK(imbalance_ratio(g).group == ImbalanceGroup::high);
  const std::vector<std::size_t> one{4, 0};
  CHECK_THROWS_AS(imbalance_ratio(one), DataError);
}

TEST_CASE("imbalance ratio matches brute force on random datasets") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t classes = 2 + gen() % 5;
    std::vector<int> labels;
    for (std::size_t c = 0; c < classes; ++c) {
      const std::size_t n = 1 + gen() % 40;
      labels.insert(labels.end(), n, static_cast<int>(c));
    }
    const auto d = labelled(labels, classes);
    std::size_t lo = SIZE_MAX, hi = 0;
    for (std::size_t c = 0; c < classes; ++c) {
      const auto n = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), static_cast<int>(c)));
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    CHECK(imbalance_ratio(d).ratio == static_cast<double>(hi) / static_cast<double>(lo));
  }
}

TEST_CASE("5x2 split is an exact stratified partition") {
  std::vector<int> labels(60, 0);
  labels.insert(labels.end(), 40, 1);
  const auto d = labelled(labels, 2);
  const auto plan = make_5x2_split(d, 42);
  CHECK(plan.warnings.empty());
  for (std::size_t r = 0; r < SplitPlan::repetitions; ++r) {
    std::set<std::size_t> all;
    for (std::size_t f = 0; f < 2; ++f) {
      std::size_t c0 = 0, c1 = 0;
      for (std::size_t i : plan.test(r, f)) {
        all.insert(i);
        (d.label(i) == 0 ? c0 : c1)++;
      }
      CHECK(c0 == 30);
      CHECK(c1 == 20);
    }
    CHECK(all.size() == 100);
    CHECK(plan.test(r, 0).size() + plan.test(r, 1).size() == 100);
    CHECK(plan.train(r, 0) == plan.test(r, 1));
  }
  CHECK(plan.test(0, 0) != plan.test(1, 0));
  CHECK(make_5x2_split(d, 42) == plan);
  CHECK_FALSE(make_5x2_split(d, 43) == plan);
}

TEST_CASE("5x2 split properties on random class mixes") {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t classes = 2 + gen() % 4;
    std::vector<int> labels;
    for (std::size_t c = 0; c < classes; ++c) labels.insert(labels.end(), 1 + gen() % 25, static_cast<int>(c));
    std::shuffle(labels.begin(), labels.end(), gen);
    const auto d = labelled(labels, classes);
    const auto plan = make_5x2_split(d, gen());
    for (std::size_t r = 0; r < SplitPlan::repetitions; ++r) {
      std::vector<int> seen(d.size(), 0);
      std::vector<std::array<int, 2>> per(classes, {0, 0});
      for (std::size_t f = 0; f < 2; ++f) {
        for (std::size_t i : plan.test(r, f)) {
          ++seen[i];
          ++per[static_cast<std::size_t>(d.label(i))][f];
        }
      }
      CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
      for (const auto& p : per) {
        if (p[0] + p[1] >= 2) CHECK(std::abs(p[0] - p[1]) <= 1);
      }
    }
  }
}

TEST_CASE("singleton classes land in one fold with a warning") {
  const auto d = labelled({0, 0, 0, 0, 1, 1, 1, 2}, 3);
  const auto plan = make_5x2_split(d, 5);
  REQUIRE(plan.warnings.size() == 1);
  CHECK(plan.warnings[0].find("c2") != std::string::npos);
  for (std::size_t r = 0; r < SplitPlan::repetitions; ++r) {
    const auto& f0 = plan.test(r, 0);
    const auto& f1 = plan.test(r, 1);
    const bool in0 = std::count(f0.begin(), f0.end(), 7u) == 1;
    const bool in1 = std::count(f1.begin(), f1.end(), 7u) == 1;
    CHECK(in0 != in1);
  }
}

TEST_CASE("csv round trip preserves instances, schema and labels") {
  for (const char* name : {"wine.dat", "zoo.dat", "glass.dat", "balance.dat"}) {
    const Dataset d = load(std::string(DSIMB_DATA_DIR) + "/" + name).data;
    std::stringstream buf;
    write_csv(d, buf);
    Dataset back = parse_csv(buf, d.name()).data;
    CHECK(back.values() == d.values());
    // CSV carries no class declaration, so compare class names per instance
    REQUIRE(back.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      CHECK(back.class_names()[static_cast<std::size_t>(back.label(i))] ==
            d.class_names()[static_cast<std::size_t>(d.label(i))]);
    REQUIRE(back.num_attributes() == d.num_attributes());
    for (std::size_t a = 0; a < d.num_attributes(); ++a) {
      CHECK(back.schema()[a].name == d.schema()[a].name);
      CHECK(back.schema()[a].kind == d.schema()[a].kind);
    }
  }
  const Dataset mixed = csv("a,b,class\n1.5,x,A\n2,y,B\n-0.25,\"q,\"\"z\",A\n").data;
  std::stringstream buf;
  write_csv(mixed, buf);
  CHECK(parse_csv(buf, "mem").data == mixed);
}

TEST_CASE("keel writer output reloads") {
  const Dataset d = csv("a,b,class\n1.5,x,A\n2,y,B\n").data;
  std::stringstream buf;
  write_keel(d, buf);
  const Dataset back = parse_keel(buf, "mem").data;
  CHECK(back.values() == d.values());
  CHECK(back.labels() == d.labels());
  CHECK(back.schema()[1].nominal_values == d.schema()[1].nominal_values);
}

TEST_CASE("add rejects malformed instances") {
  auto d = labelled({0, 1}, 2);
  const double two[2] = {1.0, 2.0};
  CHECK_THROWS_AS(d.add(std::span<const double>(two, 2), 0), std::invalid_argument);
  CHECK_THROWS_AS(d.add(std::span<const double>(two, 1), 2), std::invalid_argument);
  CHECK_NOTHROW(d.validate());
}

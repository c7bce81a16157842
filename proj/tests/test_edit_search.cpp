#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "analogy/edit_search.hpp"
#include "analogy/errors.hpp"
#include "analogy/io.hpp"
#include "support.hpp"

using namespace analogy;
using namespace testsupport;

namespace {

const std::vector<Label> kUniverse3{lab("p", 0), lab("p", 1), lab("q", 1)};

double exact(const WiringDiagram& a, const WiringDiagram& b, const CostFunction& c,
             const std::vector<Label>& universe, double budget = 20.0) {
  return wd_distance_exact(a, b, c, LabelUniverse(universe), budget).distance;
}

// The witness path replays from a to a copy of b at the reported cost.
bool witness_ok(const WiringDiagram& a, const WiringDiagram& b, const CostFunction& c,
                const ExactDistance& r) {
  if (!r.path) return r.distance == 0.0 && wd_isomorphic(a, b);
  const ReplayResult rep = replay_path(a, *r.path, c);
  return wd_isomorphic(rep.result, b) && std::abs(rep.total_cost - r.distance) < 1e-9 &&
         rep.op_costs == r.op_costs;
}

WiringDiagram single(const std::string& sensor, double value,
                     std::shared_ptr<const SensorCatalog> catalog) {
  return make_wd({{"v", {Label{sensor, kBullet, value}}}}, {}, std::move(catalog));
}

}  // namespace

TEST_CASE("universe helpers") {
  LabelUniverse u({lab("q", 1), lab("p", 0), lab("q", 1)});
  CHECK(u.size() == 2);
  CHECK(u.labels().front() == lab("p", 0));
  CHECK(u.index_of(lab("q", 1)) == 1);
  CHECK_FALSE(u.contains(lab("r", 1)));
  u.insert(lab("r", 1));
  CHECK(u.contains(lab("r", 1)));
  const WiringDiagram a = make_wd({{"A", {lab("p", 1)}}}, {});
  const WiringDiagram b = make_wd({{"B", {lab("q", 0), lab("r", 1)}}}, {});
  CHECK(endpoint_universe(a, b).size() == 3);
  CHECK(default_universe(a, b, CostFunction::unit(), 5.0).size() == 3);
}

TEST_CASE("isomorphic diagrams are at distance zero") {
  const WiringDiagram w = make_wd({{"A", {lab("p", 1)}}, {"B", {lab("q", 1)}}, {"C", {lab("p", 0)}}},
                                  {{"A", "B"}, {"A", "C"}});
  const ExactDistance r = wd_distance_exact(w, renamed_copy(w), CostFunction::unit(),
                                            endpoint_universe(w, w), 5.0);
  CHECK(r.distance == 0.0);
  CHECK_FALSE(r.path.has_value());
}

TEST_CASE("small hand-checked distances") {
  const CostFunction unit = CostFunction::unit();
  const WiringDiagram one = make_wd({{"A", {lab("p", 1)}}}, {});
  const WiringDiagram other = make_wd({{"A", {lab("p", 0)}}}, {});
  CHECK(exact(one, other, unit, kUniverse3) == 1.0);
  const WiringDiagram two = make_wd({{"A", {lab("p", 1)}}, {"B", {lab("p", 1)}}}, {{"A", "B"}});
  CHECK(exact(one, two, unit, kUniverse3) == 1.0);
  const WiringDiagram loose = make_wd({{"A", {lab("p", 1)}}, {"B", {lab("p", 1)}}}, {});
  CHECK(exact(two, loose, unit, kUniverse3) == 1.0);
  const CostFunction pricey_arrows{1.0, 1.0, 1.0, 5.0, 2.0, std::nullopt};
  CHECK(exact(two, loose, pricey_arrows, kUniverse3) == 2.0);
}

TEST_CASE("two-vertex chain against three-vertex chain equals the brute-force oracle") {
  const WiringDiagram two = make_wd({{"A", {lab("p", 1)}}, {"B", {lab("q", 1)}}}, {{"A", "B"}});
  const WiringDiagram three =
      make_wd({{"A", {lab("p", 1)}}, {"B", {lab("p", 0)}}, {"C", {lab("q", 1)}}}, {{"A", "B"}, {"B", "C"}});
  const CostFunction unit = CostFunction::unit();
  EditGraphOracle oracle(kUniverse3, unit, 3);
  const ExactDistance r = wd_distance_exact(two, three, unit, LabelUniverse(kUniverse3), 10.0);
  CHECK(r.distance == oracle.distance(two, three, 10.0));
  CHECK(r.distance == 2.0);
  CHECK(witness_ok(two, three, unit, r));
}

TEST_CASE("exact search equals the brute-force oracle on random pairs") {
  std::mt19937 rng(31);
  const CostFunction unit = CostFunction::unit();
  const CostFunction skewed{2.0, 1.0, 1.5, 0.5, 0.75, std::nullopt};
  for (const CostFunction* c : {&unit, &skewed}) {
    EditGraphOracle oracle(kUniverse3, *c, 3);
    std::size_t mismatches = 0, bad_witnesses = 0;
    for (int i = 0; i < 25; ++i) {
      const WiringDiagram a = random_wd(rng, 1 + rng() % 3, kUniverse3, toy_catalog());
      const WiringDiagram b = random_wd(rng, 1 + rng() % 3, kUniverse3, toy_catalog());
      const ExactDistance r = wd_distance_exact(a, b, *c, LabelUniverse(kUniverse3), 30.0);
      const double o = oracle.distance(a, b, 30.0);
      if (std::abs(r.distance - o) > 1e-9) {
        ++mismatches;
        MESSAGE("search " << r.distance << " oracle " << o);
      }
      bad_witnesses += !witness_ok(a, b, *c, r);
    }
    CHECK(mismatches == 0);
    CHECK(bad_witnesses == 0);
  }
}

TEST_CASE("metric properties on random triples") {
  std::mt19937 rng(41);
  const std::vector<Label> universe{lab("p", 0), lab("p", 1), lab("q", 0), lab("q", 1)};
  const CostFunction c = CostFunction::unit();
  const LabelUniverse u(universe);
  std::size_t violations = 0;
  for (int i = 0; i < 25; ++i) {
    const WiringDiagram a = random_wd(rng, 1 + rng() % 3, universe, toy_catalog());
    const WiringDiagram b = rng() % 4 == 0 ? renamed_copy(a) : random_wd(rng, 1 + rng() % 3, universe, toy_catalog());
    const WiringDiagram x = random_wd(rng, 1 + rng() % 3, universe, toy_catalog());
    const double ab = wd_distance_exact(a, b, c, u, 10.0).distance;
    const double ba = wd_distance_exact(b, a, c, u, 10.0).distance;
    const double ax = wd_distance_exact(a, x, c, u, 10.0).distance;
    const double bx = wd_distance_exact(b, x, c, u, 10.0).distance;
    violations += ab != ba;
    violations += ax > ab + bx + 1e-9;
    violations += (ab == 0.0) != (canonical_key(a) == canonical_key(b));
  }
  CHECK(violations == 0);
}

TEST_CASE("single-vertex distances follow the olog") {
  const WiringDiagram charger = load_wd(data_path("wd/charger.json"));
  const CostFunction c = load_cost(data_path("costs/charger_bus_olog.json"));
  const auto cat = charger.catalog_ptr();
  const WiringDiagram a = single("C", 0, cat);
  const WiringDiagram b = single("F", 0, cat);
  const ExactDistance r = wd_distance_exact(a, b, c, default_universe(a, b, c, 3.0), 40.0);
  CHECK(r.distance == c.change_cost({"C", kBullet, 0}, {"F", kBullet, 0}));
  REQUIRE(r.path.has_value());
  CHECK(r.path->size() == 1);
  CHECK(r.path->ops()[0].kind == EditKind::kChangeLabel);
  CHECK(default_universe(a, b, c, 3.0).size() > endpoint_universe(a, b).size());
}

TEST_CASE("exact distances never exceed the shipped path bounds") {
  const CostFunction unit = CostFunction::unit();
  for (auto [from, to, path] : {std::tuple{"wd/charger.json", "wd/bus.json", "paths/charger_to_bus.json"},
                                std::tuple{"wd/charger_states.json", "wd/bus_states.json",
                                           "paths/charger_states_to_bus_states.json"}}) {
    const WiringDiagram a = load_wd(data_path(from));
    const WiringDiagram b = load_wd(data_path(to));
    const double upper = wd_distance_upper(a, b, load_edit_path(data_path(path)).path(), unit);
    const ExactDistance r = wd_distance_exact(a, b, unit, endpoint_universe(a, b), upper);
    CHECK(r.distance <= upper);
    CHECK(r.initial_upper_bound >= r.distance);
    CHECK(witness_ok(a, b, unit, r));
  }
}

TEST_CASE("budget and argument errors") {
  const WiringDiagram a = make_wd({{"A", {lab("p", 1)}}}, {});
  const WiringDiagram b = make_wd({{"A", {lab("p", 0)}}, {"B", {lab("q", 1)}}, {"C", {lab("q", 1)}}},
                                  {{"A", "B"}, {"B", "C"}});
  try {
    wd_distance_exact(a, b, CostFunction::unit(), LabelUniverse(kUniverse3), 1.0);
    FAIL("expected the budget to run out");
  } catch (const BudgetExceededError& e) {
    CHECK(e.budget() == 1.0);
    CHECK(e.best_upper_bound() > 1.0);
  }
  CHECK_THROWS_AS(wd_distance_exact(a, b, CostFunction::unit(), LabelUniverse({lab("p", 1)}), 10.0),
                  InvalidArgumentError);
  const WiringDiagram empty_vec = make_wd({{"A", {}}}, {});
  CHECK_THROWS_AS(wd_distance_exact(empty_vec, a, CostFunction::unit(), LabelUniverse(kUniverse3), 10.0),
                  InvalidArgumentError);
  CHECK_THROWS_AS(wd_distance_exact(a, a, CostFunction::unit(), LabelUniverse(kUniverse3), 0.0),
                  InvalidArgumentError);
  CostFunction bad;
  bad.graph = -1.0;
  CHECK_THROWS_AS(wd_distance_exact(a, a, bad, LabelUniverse(kUniverse3), 10.0), NonpositiveCostError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "analogy/edit.hpp"
#include "analogy/errors.hpp"
#include "analogy/io.hpp"
#include "support.hpp"

using namespace analogy;
using namespace testsupport;

namespace {

WiringDiagram chain4() {
  return make_wd({{"A", {lab("p", 1)}}, {"B", {lab("q", 1)}}, {"C", {lab("r", 1)}}, {"D", {lab("p", 0)}}},
                 {{"A", "B"}, {"B", "C"}, {"C", "D"}});
}

const std::vector<VertexPair> kDiamond{{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}};

InvalidOpReason reason_of(const WiringDiagram& w, const EditOp& e) {
  try {
    apply_op(w, e);
  } catch (const InvalidOpError& err) {
    return err.reason();
  }
  FAIL("op unexpectedly valid: " << e.describe());
  return InvalidOpReason::kUnknownVertex;
}

std::vector<std::string> declared_kinds(const EditPathFile& f) {
  std::vector<std::string> out;
  for (const auto& r : f.records) out.push_back(std::string(roman(r.op.kind)) + (r.inverse ? "^-1" : ""));
  return out;
}

// A random op valid on w, chosen by rejection from the candidate moves.
EditOp random_valid_op(std::mt19937& rng, const WiringDiagram& w, const std::vector<Label>& universe) {
  const auto vs = w.graph().sorted_vertices();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const VertexId v = vs[rng() % vs.size()];
    const VertexId u = vs[rng() % vs.size()];
    const Label l = universe[rng() % universe.size()];
    const StateVector& sv = w.state_vector(v);
    const Label old = *std::next(sv.begin(), static_cast<long>(rng() % sv.size()));
    EditOp e;
    switch (rng() % 9) {
      case 0: {
        std::vector<VertexId> in, out;
        for (const auto& x : vs) {
          const auto r = rng() % 4;
          if (r == 0) in.push_back(x);
          if (r == 1) out.push_back(x);
        }
        e = EditOp::add_vertex("n" + std::to_string(rng() % 1000), {l}, in, out);
        break;
      }
      case 1: e = EditOp::delete_vertex(v); break;
      case 2: e = EditOp::add_label(v, l); break;
      case 3: e = EditOp::delete_label(v, old); break;
      case 4: e = EditOp::change_label(v, old, l); break;
      case 5: e = EditOp::add_arrow(v, u); break;
      case 6: e = EditOp::delete_arrow(v, u); break;
      default: {
        const DirectedGraph d = random_dag(rng, vs.size(), 0.4);
        const auto pairs = matrix_pairs(oracle_covers(reflexive_reachability(adjacency(d))), vs);
        e = rng() % 2 ? EditOp::generalize(pairs) : EditOp::specialize(pairs);
      }
    }
    try {
      apply_op(w, e);
      return e;
    } catch (const InvalidOpError&) {
    }
  }
  FAIL("no valid op found");
  return {};
}

}  // namespace

TEST_CASE("kind names and inverses") {
  CHECK(std::string(to_string(EditKind::kChangeLabel)) == "change-label");
  CHECK(std::string(roman(EditKind::kGeneralizeGraph)) == "viii");
  CHECK(edit_kind_from_string("ii") == EditKind::kDeleteVertex);
  CHECK(edit_kind_from_string("specialize-graph") == EditKind::kSpecializeGraph);
  CHECK_THROWS_AS(edit_kind_from_string("x"), ParseError);
  for (int i = 0; i <= 8; ++i) {
    const auto k = static_cast<EditKind>(i);
    CHECK(inverse_kind(inverse_kind(k)) == k);
    CHECK((inverse_kind(k) == k) == (k == EditKind::kChangeLabel));
  }
}

TEST_CASE("deleting the only label is rejected") {
  const WiringDiagram w = chain4();
  CHECK(reason_of(w, EditOp::delete_label("A", lab("p", 1))) == InvalidOpReason::kWouldEmptyStateVector);
}

TEST_CASE("generalizing a chain to the diamond keeps the labels") {
  const WiringDiagram w = chain4();
  const WiringDiagram g = apply_op(w, EditOp::generalize(kDiamond));
  CHECK(g.graph().arrow_pairs() == kDiamond);
  CHECK(g.state_vectors() == w.state_vectors());
  CHECK(in_edit_space(g));
  CHECK(reason_of(w, EditOp::specialize(kDiamond)) == InvalidOpReason::kWrongDirection);
  CHECK(reason_of(w, EditOp::generalize({})) == InvalidOpReason::kNotIrreducible);
  CHECK(reason_of(w, EditOp::generalize({{"A", "B"}, {"B", "C"}, {"C", "D"}})) ==
        InvalidOpReason::kNotIrreducible);
  CHECK(reason_of(w, EditOp::generalize({{"A", "B"}, {"B", "C"}, {"C", "D"}, {"A", "C"}})) ==
        InvalidOpReason::kWouldBreakSkeleton);
  CHECK(reason_of(w, EditOp::generalize({{"A", "Z"}})) == InvalidOpReason::kUnknownVertex);
  CHECK(reason_of(w, EditOp::generalize({{"B", "A"}, {"B", "C"}, {"C", "D"}})) ==
        InvalidOpReason::kNotIrreducible);
}

TEST_CASE("arrow edits keep the diagram acyclic and skeletal") {
  const WiringDiagram w = chain4();
  CHECK(reason_of(w, EditOp::add_arrow("D", "A")) == InvalidOpReason::kWouldBreakWd2);
  CHECK(reason_of(w, EditOp::add_arrow("A", "C")) == InvalidOpReason::kWouldBreakSkeleton);
  CHECK(reason_of(w, EditOp::delete_arrow("A", "C")) == InvalidOpReason::kUnknownArrow);
  const WiringDiagram two = make_wd({{"A", {lab("p", 1)}}, {"B", {lab("q", 1)}}}, {});
  CHECK(reason_of(two, EditOp::add_arrow("A", "A")) == InvalidOpReason::kWouldBreakWd2);
  const WiringDiagram x = apply_op(two, EditOp::add_arrow("A", "B"));
  CHECK(x.graph().arrow_pairs() == std::vector<VertexPair>{{"A", "B"}});
  CHECK(reason_of(x, EditOp::add_arrow("A", "B")) == InvalidOpReason::kWouldBreakSkeleton);
}

TEST_CASE("vertex and label edits report their failures") {
  const WiringDiagram w = chain4();
  CHECK(reason_of(w, EditOp::add_vertex("A", {lab("p", 1)})) == InvalidOpReason::kDuplicateVertex);
  CHECK(reason_of(w, EditOp::add_vertex("E", {})) == InvalidOpReason::kEmptyStateVector);
  CHECK(reason_of(w, EditOp::add_vertex("E", {lab("p", 1)}, {"D"}, {"A"})) == InvalidOpReason::kWouldBreakWd2);
  CHECK(reason_of(w, EditOp::add_vertex("E", {lab("p", 1)}, {"A"}, {"B"})) ==
        InvalidOpReason::kWouldBreakSkeleton);
  CHECK(reason_of(w, EditOp::add_vertex("E", {lab("p", 5)})) == InvalidOpReason::kIllTypedLabel);
  CHECK(reason_of(w, EditOp::delete_vertex("Z")) == InvalidOpReason::kUnknownVertex);
  CHECK(reason_of(w, EditOp::add_label("A", lab("p", 1))) == InvalidOpReason::kDuplicateLabel);
  CHECK(reason_of(w, EditOp::delete_label("A", lab("q", 1))) == InvalidOpReason::kUnknownLabel);
  CHECK(reason_of(w, EditOp::change_label("A", lab("p", 1), lab("p", 1))) == InvalidOpReason::kDuplicateLabel);
  const WiringDiagram one = make_wd({{"A", {lab("p", 1)}}}, {});
  CHECK(reason_of(one, EditOp::delete_vertex("A")) == InvalidOpReason::kWouldEmptyDiagram);
  EditOp rec = EditOp::delete_vertex("B");
  rec.labels = {lab("p", 0)};
  CHECK(reason_of(w, rec) == InvalidOpReason::kRecordMismatch);
}

TEST_CASE("deleting a middle vertex drops its arrows") {
  const WiringDiagram w = apply_op(chain4(), EditOp::delete_vertex("B"));
  CHECK(w.graph().vertex_count() == 3);
  CHECK(w.graph().arrow_pairs() == std::vector<VertexPair>{{"C", "D"}});
  CHECK(in_edit_space(w));
}

TEST_CASE("inverse examples") {
  const WiringDiagram w = chain4();
  const EditOp ch = EditOp::change_label("A", lab("p", 1), lab("q", 0));
  const EditOp inv = inverse_op(ch, w);
  CHECK(inv == EditOp::change_label("A", lab("q", 0), lab("p", 1)));
  const EditOp del = EditOp::delete_vertex("D");
  const EditOp add = inverse_op(del, w);
  CHECK(add.kind == EditKind::kAddVertex);
  CHECK(add.labels == StateVector{lab("p", 0)});
  CHECK(add.in == std::vector<VertexId>{"C"});
  CHECK(invert(invert(complete_op(del, w))) == complete_op(del, w));
  CHECK(invert(invert(ch)) == ch);
  CHECK_THROWS_AS(invert(del), InvalidOpError);
  CHECK(wd_isomorphic(apply_op(apply_op(w, del), add), w));
}

TEST_CASE("random ops stay in the edit space and their inverses undo them") {
  std::mt19937 rng(21);
  const std::vector<Label> universe{lab("p", 0), lab("p", 1), lab("q", 0), lab("q", 1), lab("r", 1)};
  const CostFunction c{2.0, 1.0, 1.5, 0.5, 0.75, std::nullopt};
  std::size_t failures = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const WiringDiagram start = random_wd(rng, 1 + rng() % 4, universe, toy_catalog());
    REQUIRE(in_edit_space(start));
    std::vector<EditOp> ops;
    WiringDiagram w = start;
    for (int step = 0; step < 8; ++step) {
      const EditOp e = random_valid_op(rng, w, universe);
      const EditOp inv = inverse_op(e, w);
      const WiringDiagram next = apply_op(w, e);
      failures += !in_edit_space(next);
      failures += !wd_isomorphic(apply_op(next, inv), w);
      failures += c.cost(e) != c.cost(inv);
      failures += inv.kind != inverse_kind(e.kind);
      ops.push_back(complete_op(e, w));
      w = next;
    }
    const ReplayResult forward = replay_path(start, EditPath(ops), c);
    failures += !wd_isomorphic(forward.result, w);
    std::vector<EditOp> back;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) back.push_back(invert(*it));
    const ReplayResult undo = replay_path(w, EditPath(back), c);
    failures += !wd_isomorphic(undo.result, start);
    failures += std::abs(undo.total_cost - forward.total_cost) > 1e-9;
  }
  CHECK(failures == 0);
}

TEST_CASE("empty paths are rejected") {
  CHECK_THROWS_AS(EditPath({}), EmptyPathError);
}

TEST_CASE("replay reports the failing index") {
  const WiringDiagram w = chain4();
  const EditPath p({EditOp::add_label("A", lab("q", 1)), EditOp::delete_vertex("Z")});
  try {
    replay_path(w, p, CostFunction::unit());
    FAIL("expected failure");
  } catch (const InvalidOpError& e) {
    REQUIRE(e.index().has_value());
    CHECK(*e.index() == 1);
    CHECK(e.reason() == InvalidOpReason::kUnknownVertex);
  }
}

TEST_CASE("op and inverse bound the distance from a diagram to itself") {
  const WiringDiagram w = chain4();
  const EditOp e = EditOp::add_label("A", lab("q", 1));
  const CostFunction c{1.0, 3.0, 1.0, 1.0, 1.0, std::nullopt};
  CHECK(wd_distance_upper(w, w, EditPath({e, inverse_op(e, w)}), c) == 6.0);
  CHECK_THROWS_AS(wd_distance_upper(w, w, EditPath({e}), c), PathEndpointMismatchError);
}

TEST_CASE("isomorphism examples") {
  const WiringDiagram w = chain4();
  CHECK(wd_isomorphic(w, renamed_copy(w)));
  const WiringDiagram top = load_wd(data_path("wd/buy_coffee_pay_first.json"));
  const WiringDiagram bottom = load_wd(data_path("wd/buy_coffee_receive_first.json"));
  CHECK_FALSE(wd_isomorphic(top, bottom));
  CHECK_FALSE(wd_isomorphic(w, apply_op(w, EditOp::generalize(kDiamond))));
  std::mt19937 rng(4);
  const std::vector<Label> universe{lab("p", 0), lab("p", 1), lab("q", 1)};
  std::size_t mismatches = 0;
  for (int i = 0; i < 300; ++i) {
    const WiringDiagram a = random_wd(rng, 1 + rng() % 4, universe, toy_catalog());
    const WiringDiagram b = rng() % 3 ? random_wd(rng, a.graph().vertex_count(), universe, toy_catalog())
                                      : renamed_copy(a);
    mismatches += wd_isomorphic(a, b) != (canonical_key(a) == canonical_key(b));
  }
  CHECK(mismatches == 0);
}

TEST_CASE("cost function validation and olog-priced changes") {
  CostFunction bad;
  bad.arrow = 0.0;
  CHECK_THROWS_AS(bad.validate(), NonpositiveCostError);
  const CostFunction c = load_cost(data_path("costs/charger_bus_olog.json"));
  CHECK(c.vertex == 10.0);
  CHECK(c.change_cost({"C", kBullet, 0}, {"F", kBullet, 0}) == 2.0);
  CHECK(c.change_cost({"F", kBullet, 0}, {"C", kBullet, 0}) == 2.0);
  CHECK(std::isinf(c.change_cost({"C", kBullet, 0}, {"M_p", kBullet, 1})));
  CHECK(std::isinf(c.change_cost({"C", kBullet, 0}, {"C", kBullet, 0})));
  const EditOp e = EditOp::change_label("x", {"C", kBullet, 0}, {"M_p", kBullet, 1});
  try {
    c.cost(e);
    FAIL("expected an unpriced change");
  } catch (const InvalidOpError& err) {
    CHECK(err.reason() == InvalidOpReason::kUnpricedLabel);
  }
}

TEST_CASE("shipped charger to bus path") {
  const WiringDiagram w1 = load_wd(data_path("wd/charger.json"));
  const WiringDiagram w2 = load_wd(data_path("wd/bus.json"));
  const EditPathFile f = load_edit_path(data_path("paths/charger_to_bus.json"));
  CHECK(declared_kinds(f) == std::vector<std::string>{"v", "v", "v^-1", "v^-1", "ii^-1", "viii^-1"});
  CHECK(f.names() == std::vector<std::string>{"E1", "E2", "E6^-1", "E5^-1", "E4^-1", "E3^-1"});
  const EditPath p = f.path();
  const ReplayResult r = replay_path(w1, p, CostFunction::unit());
  CHECK(r.total_cost == 6.0);
  CHECK(wd_isomorphic(r.result, w2));
  CHECK(wd_distance_upper(w1, w2, p, CostFunction::unit()) == 6.0);
  WiringDiagram w = w1;
  for (const EditOp& e : p.ops()) {
    w = apply_op(w, e);
    CHECK(in_edit_space(w));
  }
}

TEST_CASE("shipped state-based charger to bus path") {
  const WiringDiagram w1 = load_wd(data_path("wd/charger_states.json"));
  const WiringDiagram w2 = load_wd(data_path("wd/bus_states.json"));
  const EditPathFile f = load_edit_path(data_path("paths/charger_states_to_bus_states.json"));
  CHECK(declared_kinds(f) ==
        std::vector<std::string>{"v", "v", "v", "v^-1", "v^-1", "v^-1", "ii^-1", "viii^-1"});
  const ReplayResult r = replay_path(w1, f.path(), CostFunction::unit());
  CHECK(r.total_cost == 8.0);
  CHECK(r.op_costs.size() == 8);
  CHECK(wd_isomorphic(r.result, w2));
}

#include <doctest.h>

#include <stdexcept>

#include <notrade/enumeration.hpp>
#include <notrade/epistemic.hpp>
#include <notrade/examples.hpp>
#include <notrade/model_io.hpp>
#include <notrade/multi_security.hpp>
#include <notrade/verifiability.hpp>

using namespace notrade;

namespace {

SecurityBundle e1_bundle() {
    ModelDocument doc = example_one();
    return make_bundle(doc, "split0");
}

}  // namespace

TEST_CASE("the first example's bundle is tradable and trades at every state") {
    ModelDocument doc = example_one();
    const Model& m = doc.model;
    SecurityBundle bundle = e1_bundle();

    TradabilityVerdict verdict = is_tradable(bundle, m);
    CHECK(verdict.tradable);

    for (StateIdx s = 0; s < 4; ++s) {
        std::optional<MultiTradeReport> report = detect_ck_trade_multi(m, bundle, s);
        REQUIRE(report.has_value());
        CHECK(report->profits == std::vector<Rat>{Rat(1, 3), Rat(1, 3)});
    }
}

TEST_CASE("tradability rejects non-zero sums and non-positive cell maxima") {
    ModelDocument doc = example_one();
    const Model& m = doc.model;

    SecurityBundle skewed{{Security{{Rat(1), Rat(0), Rat(0), Rat(0)}},
                           Security{{Rat(0), Rat(0), Rat(0), Rat(0)}}}};
    TradabilityVerdict sums = is_tradable(skewed, m);
    CHECK(!sums.tradable);
    CHECK(sums.sum_violation == 0);

    // Zero-sum, but agent 1's payoff is never positive on the cell {w1, w2}.
    SecurityBundle flat{{Security{{Rat(0), Rat(0), Rat(1), Rat(-1)}},
                         Security{{Rat(0), Rat(0), Rat(-1), Rat(1)}}}};
    TradabilityVerdict maxes = is_tradable(flat, m);
    CHECK(!maxes.tradable);
    REQUIRE(maxes.max_violation.has_value());
    CHECK(maxes.max_violation->first == 0);

    CHECK_THROWS_AS(detect_ck_trade_multi(m, skewed, 0), std::invalid_argument);
    SecurityBundle short_one{{Security{{Rat(0), Rat(0), Rat(0), Rat(0)}}}};
    CHECK_THROWS_AS(is_tradable(short_one, m), std::invalid_argument);
}

TEST_CASE("split_security builds a coherent zero-sum pair around the gap midpoint") {
    Security x{{Rat(1), Rat(-1), Rat(-1), Rat(1)}};
    SplitResult split = split_security(x, {{1, Rat(1, 3)}, {0, Rat(-1, 3)}});
    CHECK(split.price == Rat(0));
    REQUIRE(split.bundle.n_agents() == 2);
    // Agent 2 ranked on top holds X - p; agent 1 holds the negation.
    CHECK(split.bundle.securities[1].payoff == x.payoff);
    CHECK(split.bundle.securities[0].payoff == negate(x).payoff);
    for (StateIdx s = 0; s < 4; ++s)
        CHECK(split.bundle.securities[0][s] + split.bundle.securities[1][s] == Rat(0));

    CHECK_THROWS_AS(split_security(x, {{0, Rat(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(split_security(x, {{0, Rat(1)}, {0, Rat(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(split_security(x, {{0, Rat(0)}, {1, Rat(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(split_security(x, {{0, Rat(1)}, {1, Rat(1)}}), std::invalid_argument);
}

TEST_CASE("bundle separation coincides with single-security separation on splits") {
    Rng rng(606);
    for (int trial = 0; trial < 200; ++trial) {
        int n = rng.between(2, 5);
        PartitionProfile profile{n, {random_partition(rng, n), random_partition(rng, n)}};
        Security x = random_security(rng, n);
        StateIdx s = rng.below(n);
        ValueSummary range = values_on(x, StateSet::full(n));
        if (range.constant()) continue;  // split needs a gap to sit in
        SplitResult split =
            split_security(x, {{0, range.max}, {1, range.min}});
        CAPTURE(trial);
        REQUIRE(is_threshold_verifiable_multi(profile, split.bundle, s).holds ==
                is_threshold_verifiable(profile, x, s).holds);
    }
}

TEST_CASE("positive-profit synthesis delivers constant positive profits") {
    ModelDocument doc = example_one();
    const PartitionProfile& profile = doc.model.profile();
    SecurityBundle bundle = e1_bundle();

    TradePossibility possible = ck_trade_possible_multi(profile, bundle, 0);
    CHECK(possible.possible);
    for (const FeasibleSet& f : possible.sets) {
        CHECK(!f.empty);
        CHECK(f.lower >= Rat(0));
    }

    SynthesisResult synthesis = synthesize_positive_profit_priors(profile, bundle, 0);
    REQUIRE(synthesis.ok());
    Model realized = make_model(profile.partitions, synthesis.priors->priors);
    std::optional<MultiTradeReport> report = detect_ck_trade_multi(realized, bundle, 0);
    REQUIRE(report.has_value());
    for (const Rat& profit : report->profits) CHECK(profit > Rat(0));
}

TEST_CASE("proposition verdicts hold on the example bundle at every state") {
    ModelDocument doc = example_one();
    const PartitionProfile& profile = doc.model.profile();
    SecurityBundle bundle = e1_bundle();
    for (StateIdx s = 0; s < 4; ++s) {
        PropositionVerdict verdict = verify_proposition_on(profile, bundle, s);
        CHECK(!verdict.threshold_verifiable);
        CHECK(verdict.trade_possible);
        CHECK(verdict.synthesis_confirmed);
        CHECK(verdict.holds);
    }
}

TEST_CASE("an all-zero bundle is judged, not rejected: vacuous separation, no trade") {
    ModelDocument doc = example_one();
    const PartitionProfile& profile = doc.model.profile();
    SecurityBundle zero{{constant_security(4, Rat(0)), constant_security(4, Rat(0))}};
    PropositionVerdict verdict = verify_proposition_on(profile, zero, 0);
    CHECK(verdict.threshold_verifiable);  // every agent's payoff is constant
    CHECK(!verdict.trade_possible);       // profits are pinned to zero
    CHECK(verdict.holds);

    MultiThresholdVerdict threshold = is_threshold_verifiable_multi(profile, zero, 0);
    CHECK(threshold.holds);
    CHECK(threshold.constant_case);

    SecurityBundle skewed{{Security{{Rat(1), Rat(0), Rat(0), Rat(0)}},
                           Security{{Rat(0), Rat(0), Rat(0), Rat(0)}}}};
    CHECK_THROWS_AS(verify_proposition_on(profile, skewed, 0), std::invalid_argument);
}

TEST_CASE("profit feasibility clamps to strictly positive values") {
    ModelDocument doc = example_one();
    const PartitionProfile& profile = doc.model.profile();
    SecurityBundle bundle = e1_bundle();
    std::vector<FeasibleSet> sets = feasible_profits(profile, bundle, 0);
    REQUIRE(sets.size() == 2);
    for (const FeasibleSet& f : sets) {
        CHECK(!f.empty);
        CHECK(!f.contains(Rat(0)));
        CHECK(f.contains(Rat(1, 2)));
    }
}

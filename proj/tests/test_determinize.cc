// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include "catch_amalgamated.hpp"

#include "coaltrace/determinize.hh"
#include "coaltrace/laws.hh"
#include "coaltrace/semantics.hh"
#include "corpus.hh"
#include "oracles.hh"

using namespace coaltrace;

namespace {

/// Family over {a=0, b=1, c=2, ...} from lists of member ids.
Family fam(std::size_t universe, std::initializer_list<std::initializer_list<StateId>> sets) {
    Family f;
    for (auto s : sets) { f.insert(StateSet(universe, s)); }
    return f;
}

/// Meanings of the states reachable from `from`.
std::set<StateSet> reachable_meanings(const SubsetResult& r, StateId from) {
    std::set<StateId> seen{from};
    std::vector<StateId> todo{from};
    while (!todo.empty()) {
        StateId d = todo.back();
        todo.pop_back();
        for (StateId e : r.machine.delta[d]) {
            if (seen.insert(e).second) { todo.push_back(e); }
        }
    }
    std::set<StateSet> out;
    for (StateId d : seen) { out.insert(r.meaning[d]); }
    return out;
}

std::size_t reachable_count(const Dfa& d, const std::vector<StateId>& from) {
    std::set<StateId> seen(from.begin(), from.end());
    std::vector<StateId> todo(from.begin(), from.end());
    while (!todo.empty()) {
        StateId x = todo.back();
        todo.pop_back();
        for (StateId y : d.delta[x]) {
            if (seen.insert(y).second) { todo.push_back(y); }
        }
    }
    return seen.size();
}

} // namespace

TEST_CASE("coaltrace::determinize subset construction examples") {
    Nfa classic{{"q0", "q1"}, {"a"}, {{0, 0, 0}, {0, 0, 1}}, {1}};
    auto r = det_subset(classic, Branching::Disjunctive);
    auto from_q0 = reachable_meanings(r, r.embed[0]);
    CHECK(from_q0 == std::set<StateSet>{StateSet(2, {0}), StateSet(2, {0, 1})});
    for (std::size_t d = 0; d < r.meaning.size(); ++d) {
        if (from_q0.count(r.meaning[d])) { CHECK(r.machine.output[d] == (r.meaning[d] == StateSet(2, {0, 1}))); }
    }
    CHECK(r.meaning[r.embed[1]] == StateSet(2, {1}));
    CHECK(validate(r.machine).empty());
    CHECK(r.machine.states[r.embed[0]] == "{q0}");

    // A total deterministic input yields only singleton states.
    Nfa det{{"p", "q"}, {"a", "b"}, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}}, {0}};
    auto rd = det_subset(det, Branching::Disjunctive);
    CHECK(rd.machine.num_states() == 2);
    for (const auto& m : rd.meaning) { CHECK(m.size() == 1); }

    Nfa split{{"x", "y", "z"}, {"a"}, {{0, 0, 1}, {0, 0, 2}}, {1}};
    auto rc = det_subset(split, Branching::Conjunctive);
    StateId yz = rc.machine.delta[rc.embed[0]][0];
    CHECK(rc.meaning[yz] == StateSet(3, {1, 2}));
    CHECK_FALSE(rc.machine.output[yz]);
    auto rdis = det_subset(split, Branching::Disjunctive);
    CHECK(rdis.machine.output[rdis.machine.delta[rdis.embed[0]][0]]);
}

TEST_CASE("coaltrace::determinize subset constructions are correct on a random corpus") {
    std::mt19937 rng(101);
    for (int i = 0; i < 60; ++i) {
        auto n = corpus::random_nfa(rng, 5, 3);
        for (auto mode : {Branching::Disjunctive, Branching::Conjunctive}) {
            auto r = det_subset(n, mode);
            auto report = check_correctness(n, r, mode, 7);
            CHECK(report.holds());
            CHECK(report.instances > 0);
            for (StateId x = 0; x < n.num_states(); ++x) {
                for (const auto& w : oracle::all_words(n.alphabet.size(), 4)) {
                    bool expected = mode == Branching::Disjunctive ? oracle::nfa_accepts(n, x, w)
                                                                   : oracle::nfa_accepts_all(n, x, w);
                    CHECK(oracle::dfa_run(r.machine, r.embed[x], w) == expected);
                }
            }
        }
    }
}

TEST_CASE("coaltrace::determinize a corrupted result is reported with its word") {
    Nfa classic{{"q0", "q1"}, {"a"}, {{0, 0, 0}, {0, 0, 1}}, {1}};
    auto r = det_subset(classic, Branching::Disjunctive);
    StateId target = r.machine.delta[r.embed[0]][0];
    r.machine.output[target] = !r.machine.output[target];
    auto report = check_correctness(classic, r, Branching::Disjunctive, 3);
    REQUIRE_FALSE(report.holds());
    CHECK(report.failures.front().input == "state q0, word a");
}

TEST_CASE("coaltrace::determinize weighted determinization examples") {
    WeightedAut<NaturalSemiring> w{{"x"}, {"a"}, {Natural(3)}, {std::vector<WeightVec<NaturalSemiring>>(1)}};
    w.trans[0][0].set(0, 2);
    // The vectors 2^k x are pairwise distinct, so the machine is infinite and
    // is checked along its runs instead.
    auto v = WeightVec<NaturalSemiring>::unit(0);
    v = weighted_successor(w, v, 0);
    v = weighted_successor(w, v, 0);
    CHECK(weighted_output(w, v) == 12);
    auto table = wa_trace(w, 0, 6);
    for (const auto& word : oracle::all_words(1, 6)) {
        auto u = WeightVec<NaturalSemiring>::unit(0);
        for (Label a : word) { u = weighted_successor(w, u, a); }
        CHECK(weighted_output(w, u) == table.at(word));
        CHECK(table.at(word) == Natural(3) * (Natural(1) << word.size()));
    }
    CHECK_THROWS_AS(det_weighted(w, 40), BudgetExceeded);
    try {
        det_weighted(w, 5);
    } catch (const BudgetExceeded& e) {
        CHECK(e.budget() == 5);
    }
    // With the loop weight 1 the machine is finite and correct.
    auto unit = w;
    unit.trans[0][0].set(0, 1);
    auto r = det_weighted(unit, 5);
    CHECK(r.machine.num_states() == 1);
    CHECK(r.meaning[r.embed[0]] == WeightVec<NaturalSemiring>::unit(0));
    CHECK(check_correctness(unit, r, 6).holds());
}

TEST_CASE("coaltrace::determinize the all-zero automaton collapses onto an absorbing zero state") {
    WeightedAut<RationalSemiring> zero{{"x", "y"}, {"a", "b"}, {Rational(0), Rational(0)},
                                       std::vector<std::vector<WeightVec<RationalSemiring>>>(
                                           2, std::vector<WeightVec<RationalSemiring>>(2))};
    auto r = det_weighted(zero);
    std::optional<StateId> absorbing;
    for (std::size_t d = 0; d < r.meaning.size(); ++d) {
        CHECK(r.machine.output[d] == 0);
        if (r.meaning[d].empty()) { absorbing = static_cast<StateId>(d); }
    }
    REQUIRE(absorbing.has_value());
    for (std::size_t d = 0; d < r.meaning.size(); ++d) {
        for (StateId e : r.machine.delta[d]) { CHECK(e == *absorbing); }
    }
    CHECK(r.machine.num_states() == 3);
}

TEST_CASE("coaltrace::determinize Boolean weighted determinization matches the subset construction") {
    std::mt19937 rng(7);
    for (int i = 0; i < 80; ++i) {
        auto n = corpus::random_nfa(rng, 5, 2);
        auto sub = det_subset(n, Branching::Disjunctive);
        auto wr = det_weighted(corpus::as_weighted(n));
        REQUIRE(sub.machine.num_states() == wr.machine.num_states());
        for (std::size_t d = 0; d < wr.meaning.size(); ++d) {
            StateSet support = StateSet::of(n.num_states(), wr.meaning[d].support());
            // Discovery order is the same in both constructions.
            CHECK(support == sub.meaning[d]);
            CHECK(wr.machine.output[d] == sub.machine.output[d]);
            CHECK(wr.machine.delta[d] == sub.machine.delta[d]);
        }
        CHECK(wr.embed == sub.embed);
    }
}

TEST_CASE("coaltrace::determinize weighted determinization is correct over the rationals") {
    std::mt19937 rng(77);
    const std::vector<Rational> units{Rational(1), Rational(-1)};
    const std::vector<Rational> finals{Rational(1, 2), Rational(2, 3), Rational(-1), Rational(3)};
    int finished = 0;
    for (int i = 0; i < 40; ++i) {
        auto w = corpus::random_weighted<RationalSemiring>(rng, 4, 2, units, finals, 0.15);
        try {
            auto r = det_weighted(w, 300);
            ++finished;
            CHECK(check_correctness(w, r, 5).holds());
        } catch (const BudgetExceeded&) {
        }
    }
    CHECK(finished >= 20);
}

TEST_CASE("coaltrace::determinize chi examples") {
    // a=0, b=1, c=2
    CHECK(chi_good(fam(3, {{0, 2}, {1, 2}}), 3) == fam(3, {{2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}));
    CHECK(chi_good(Family{}, 3) == fam(3, {{}}));
    CHECK(chi_good(fam(3, {{}}), 3).empty());

    CHECK(chi_wrong(fam(3, {{0, 2}, {1, 2}}), 3) == fam(3, {{0, 1}, {0, 2}, {1, 2}, {2}}));
    // d=0, e=1
    CHECK(chi_wrong(fam(2, {{0, 1}}), 2) == fam(2, {{0}, {1}}));
    CHECK(chi_wrong(Family{}, 3) == fam(3, {{}}));
}

TEST_CASE("coaltrace::determinize chi agrees with brute-force enumeration") {
    std::mt19937 rng(9);
    for (int i = 0; i < 2000; ++i) {
        std::size_t universe = corpus::uniform(rng, 0, 5);
        Family s;
        std::size_t members = corpus::uniform(rng, 0, 4);
        for (std::size_t k = 0; k < members; ++k) { s.insert(StateSet::from_mask(universe, rng())); }
        CHECK(chi_good(s, universe) == oracle::chi_good_brute(s, universe));
        // Every choice image meets every member, so it lies in chi_good.
        for (const auto& v : chi_wrong(s, universe)) { CHECK(chi_good(s, universe).count(v) == 1); }
    }
}

TEST_CASE("coaltrace::determinize alternating translation examples") {
    AlternatingAut a;
    a.states = {"x", "y"};
    a.alphabet = {"a"};
    a.output = {false, true};
    a.trans.assign(2, std::vector<IdFamily>(1));
    a.trans[0][0] = {{1}};
    CHECK(alt_trace(a, 0, 1).at(Word{0}));
    auto r = alt_to_nfa(a);
    CHECK(nfa_trace(r.nfa, r.embed[0], 1).at(Word{0}));
    CHECK(r.meaning[r.embed[0]] == StateSet(2, {0}));
    CHECK(validate(r.nfa).empty());
}

TEST_CASE("coaltrace::determinize alternating translation on special cases") {
    std::mt19937 rng(55);
    for (int i = 0; i < 60; ++i) {
        auto n = corpus::random_nfa(rng, 4, 2);
        // Disjunctions of singletons, and a single conjunction per letter.
        AlternatingAut disj, conj;
        for (AlternatingAut* a : {&disj, &conj}) {
            a->states = n.states;
            a->alphabet = n.alphabet;
            a->output.assign(n.num_states(), false);
            for (StateId x : n.accepting) { a->output[x] = true; }
            a->trans.assign(n.num_states(), std::vector<IdFamily>(n.alphabet.size()));
        }
        const auto succ = n.successor_table();
        for (StateId x = 0; x < n.num_states(); ++x) {
            for (Label l = 0; l < n.alphabet.size(); ++l) {
                IdSet all;
                for (StateId y : succ[x][l].members()) {
                    disj.trans[x][l].insert(IdSet{y});
                    all.insert(y);
                }
                conj.trans[x][l].insert(all);
            }
        }
        auto expect_disj = nfa_trace_all(n, 5);
        auto expect_conj = bt_nfa_trace_all(n, 5, Branching::Conjunctive);
        auto rd = alt_to_nfa(disj);
        auto rc = alt_to_nfa(conj);
        auto td = nfa_trace_all(rd.nfa, 5);
        auto tc = nfa_trace_all(rc.nfa, 5);
        for (StateId x = 0; x < n.num_states(); ++x) {
            CHECK(td[rd.embed[x]] == expect_disj[x]);
            CHECK(tc[rc.embed[x]] == expect_conj[x]);
        }
    }
}

TEST_CASE("coaltrace::determinize alternating translation is correct on a random corpus") {
    std::mt19937 rng(56);
    for (int i = 0; i < 60; ++i) {
        auto a = corpus::random_alternating(rng, 4, 2);
        auto r = alt_to_nfa(a);
        CHECK(check_correctness(a, r, 5).holds());
    }
}

TEST_CASE("coaltrace::determinize canonical construction examples") {
    Nfa dead{{"x"}, {"a"}, {}, {}};
    auto r = canonical_det_nfa(dead);
    moore_trace(r.machine, r.embed[0], 6).for_each([](const Word&, bool v) { CHECK_FALSE(v); });

    std::mt19937 rng(3);
    for (int i = 0; i < 20; ++i) {
        Nfa n;
        do {
            n = corpus::random_nfa(rng, 2, 2);
        } while (n.num_states() != 2);
        auto c = canonical_det_nfa(n);
        CHECK(c.machine.num_states() <= 16);
        for (const auto& m : c.meaning) { CHECK(m.base == 2); }
    }

    Nfa big = corpus::random_nfa(rng, 1, 1);
    big.states = numbered_names(5, "q");
    CHECK_THROWS_AS(canonical_det_nfa(big), BudgetExceeded);
    CHECK_NOTHROW(canonical_det_nfa(big, 5));
}

TEST_CASE("coaltrace::determinize canonical construction embeds states as their principal filters") {
    Nfa n{{"p", "q"}, {"a"}, {{0, 0, 1}}, {1}};
    auto r = canonical_det_nfa(n);
    // iota(p) holds exactly the predicates containing p: {p} and {p,q}.
    CHECK(render_predicates(r.meaning[r.embed[0]], n.states) == "{{p},{p,q}}");
    CHECK(check_correctness(n, r, 6).holds());
}

TEST_CASE("coaltrace::determinize canonical construction is correct on small NFAs") {
    std::mt19937 rng(61);
    for (int i = 0; i < 40; ++i) {
        auto n = corpus::random_nfa(rng, 3, 2);
        auto r = canonical_det_nfa(n);
        CHECK(check_correctness(n, r, 6).holds());
        CHECK(reachable_count(r.machine, r.embed) <= 256);
    }
}

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

#include "coaltrace/semantics.hh"
#include "corpus.hh"
#include "oracles.hh"

using namespace coaltrace;

namespace {

const Word kEps{};
const Word kA{0};
const Word kAA{0, 0};

WeightedTreeAut<NaturalSemiring> binary_wta() {
    WeightedTreeAut<NaturalSemiring> w;
    w.states = {"x"};
    w.signature = {{"b", 2}, {"c", 0}};
    w.trans.resize(1);
    w.trans[0].set(FlatTerm{0, {0, 0}}, 2);
    w.trans[0].set(FlatTerm{1, {}}, 3);
    return w;
}

/// Empty transition rows for `states` states over `letters` letters.
std::vector<std::vector<WeightVec<NaturalSemiring>>> rows(std::size_t states, std::size_t letters) {
    return std::vector<std::vector<WeightVec<NaturalSemiring>>>(states,
                                                                std::vector<WeightVec<NaturalSemiring>>(letters));
}

} // namespace

TEST_CASE("coaltrace::semantics nfa trace examples") {
    Nfa n{{"q0", "q1"}, {"a"}, {{0, 0, 1}, {0, 0, 0}}, {1}};
    auto t = nfa_trace(n, 0, 2);
    CHECK(t.size() == 3);
    CHECK_FALSE(t.at(kEps));
    CHECK(t.at(kA));
    CHECK(t.at(kAA));

    Nfa dead{{"x"}, {"a", "b"}, {}, {}};
    nfa_trace(dead, 0, 4).for_each([](const Word&, bool v) { CHECK_FALSE(v); });

    Nfa sink{{"x"}, {"a"}, {{0, 0, 0}}, {0}};
    nfa_trace(sink, 0, 5).for_each([](const Word&, bool v) { CHECK(v); });

    CHECK_THROWS_AS(nfa_trace(n, 7, 2), UnknownState);
    CHECK_THROWS_AS(nfa_trace(n, 0, 2).at(Word{0, 0, 0}), std::out_of_range);
}

TEST_CASE("coaltrace::semantics depth-zero tables hold only the empty word") {
    Nfa n{{"q0", "q1"}, {"a", "b"}, {{0, 0, 1}}, {1}};
    auto t = nfa_trace(n, 1, 0);
    CHECK(t.size() == 1);
    CHECK(t.at(kEps));
}

TEST_CASE("coaltrace::semantics length semantics examples and agreement") {
    Nfa n{{"q0", "q1"}, {"a"}, {{0, 0, 1}}, {1}};
    auto l = length_semantics(n, 0, 3);
    CHECK(l == std::vector<bool>{false, true, false, false});
    CHECK(length_semantics(n, 1, 3) == std::vector<bool>{true, false, false, false});

    std::mt19937 rng(21);
    for (int i = 0; i < 100; ++i) {
        Nfa r = corpus::random_nfa(rng, 4, 2);
        auto tables = nfa_trace_all(r, 5);
        auto lengths = length_semantics_all(r, 5);
        for (StateId x = 0; x < r.num_states(); ++x) {
            for (std::size_t k = 0; k <= 5; ++k) {
                const auto& layer = tables[x].layer(k);
                bool some = std::find(layer.begin(), layer.end(), true) != layer.end();
                CHECK(lengths[x][k] == some);
            }
        }
    }
}

TEST_CASE("coaltrace::semantics lts trace examples") {
    Lts l{{"x", "y"}, {"a"}, {{0, 0, 1}}};
    auto dead = lts_traces(l, 1, 3);
    dead.for_each([](const Word& w, bool v) { CHECK(v == w.empty()); });
    auto t = lts_traces(l, 0, 3);
    t.for_each([](const Word& w, bool v) { CHECK(v == (w.size() <= 1)); });

    Lts loop{{"x"}, {"a"}, {{0, 0, 0}}};
    lts_traces(loop, 0, 4).for_each([](const Word&, bool v) { CHECK(v); });
}

TEST_CASE("coaltrace::semantics conjunctive reading examples") {
    Nfa vacuous{{"x"}, {"a"}, {}, {}};
    auto t = bt_nfa_trace(vacuous, 0, 2, Branching::Conjunctive);
    CHECK_FALSE(t.at(kEps));
    CHECK(t.at(kA));
    CHECK(t.at(kAA));

    Nfa split{{"x", "y", "z"}, {"a"}, {{0, 0, 1}, {0, 0, 2}}, {1}};
    CHECK_FALSE(bt_nfa_trace(split, 0, 1, Branching::Conjunctive).at(kA));
    CHECK(bt_nfa_trace(split, 0, 1, Branching::Disjunctive).at(kA));
}

TEST_CASE("coaltrace::semantics nfa tables agree with path enumeration") {
    std::mt19937 rng(8);
    for (int i = 0; i < 120; ++i) {
        Nfa n = corpus::random_nfa(rng, 4, 2);
        auto disj = bt_nfa_trace_all(n, 5, Branching::Disjunctive);
        auto conj = bt_nfa_trace_all(n, 5, Branching::Conjunctive);
        auto plain = nfa_trace_all(n, 5);
        auto boolean = wa_trace_all(corpus::as_weighted(n), 5);
        for (StateId x = 0; x < n.num_states(); ++x) {
            CHECK(plain[x] == disj[x]);
            CHECK(plain[x] == boolean[x]);
            plain[x].for_each([&](const Word& w, bool v) {
                CHECK(v == oracle::nfa_accepts(n, x, w));
                CHECK(conj[x].at(w) == oracle::nfa_accepts_all(n, x, w));
            });
        }
    }
}

TEST_CASE("coaltrace::semantics alternating trace examples") {
    AlternatingAut a;
    a.states = {"x", "w", "y", "z", "v"};
    a.alphabet = {"a"};
    a.output = {false, false, true, false, false};
    a.trans.assign(5, std::vector<IdFamily>(1));
    a.trans[0][0] = {{2}, {3}};
    a.trans[1][0] = {{2, 3}};
    CHECK(alt_trace(a, 0, 1).at(kA));
    CHECK_FALSE(alt_trace(a, 1, 1).at(kA));
    auto empty = alt_trace(a, 4, 3);
    empty.for_each([](const Word& w, bool v) {
        if (!w.empty()) { CHECK_FALSE(v); }
    });

    std::mt19937 rng(4);
    for (int i = 0; i < 100; ++i) {
        auto r = corpus::random_alternating(rng, 4, 2);
        auto tables = alt_trace_all(r, 5);
        for (StateId x = 0; x < r.num_states(); ++x) {
            tables[x].for_each([&](const Word& w, bool v) { CHECK(v == oracle::alt_accepts(r, x, w)); });
        }
    }
}

TEST_CASE("coaltrace::semantics weighted trace examples") {
    WeightedAut<NaturalSemiring> w{{"x"}, {"a"}, {Natural(3)}, rows(1, 1)};
    w.trans[0][0].set(0, 2);
    auto t = wa_trace(w, 0, 6);
    t.for_each([](const Word& word, const Natural& v) { CHECK(v == Natural(3) << word.size()); });
    CHECK(t.at(kAA) == 12);

    WeightedAut<NaturalSemiring> zero{{"x", "y"}, {"a"}, {Natural(0), Natural(0)}, rows(2, 1)};
    zero.trans[0][0].set(1, 5);
    zero.trans[1][0].set(0, 5);
    wa_trace(zero, 0, 4).for_each([](const Word&, const Natural& v) { CHECK(v == 0); });
}

TEST_CASE("coaltrace::semantics weighted tables agree with path sums") {
    std::mt19937 rng(13);
    const std::vector<Rational> pool{Rational(1), Rational(-1), Rational(1, 2), Rational(3)};
    for (int i = 0; i < 60; ++i) {
        auto w = corpus::random_weighted<RationalSemiring>(rng, 4, 2, pool, pool, 0.35);
        auto tables = wa_trace_all(w, 5);
        for (StateId x = 0; x < w.num_states(); ++x) {
            tables[x].for_each([&](const Word& word, const Rational& v) {
                CHECK(v == oracle::weighted_paths(w, x, word));
            });
        }
    }
}

TEST_CASE("coaltrace::semantics raising the depth only appends layers") {
    std::mt19937 rng(17);
    for (int i = 0; i < 50; ++i) {
        auto n = corpus::random_nfa(rng, 4, 3);
        auto deep = nfa_trace_all(n, 6);
        auto shallow = nfa_trace_all(n, 4);
        for (StateId x = 0; x < n.num_states(); ++x) { CHECK(deep[x].truncated(4) == shallow[x]); }
        auto g = corpus::random_gps(rng, 3, 2);
        CHECK(gps_trace(g, 0, 6).truncated(3) == gps_trace(g, 0, 3));
    }
}

TEST_CASE("coaltrace::semantics zero entries propagate to extensions over positive semirings") {
    std::mt19937 rng(19);
    for (int i = 0; i < 40; ++i) {
        // Prefix-closed languages: every state accepting, so acceptance of w
        // is existence of a path.
        auto n = corpus::random_nfa(rng, 4, 2, 0.3, 1.0);
        auto w = corpus::random_weighted<NaturalSemiring>(rng, 4, 2, {Natural(1), Natural(2)},
                                                          {Natural(1), Natural(3)}, 0.3, 1.0);
        auto bt = nfa_trace_all(n, 5);
        auto wt = wa_trace_all(w, 5);
        for (StateId x = 0; x < n.num_states(); ++x) {
            bt[x].for_each([&](const Word& word, bool v) {
                if (!v) {
                    for (Label a = 0; a < n.alphabet.size() && word.size() < 5; ++a) {
                        Word longer = word;
                        longer.push_back(a);
                        CHECK_FALSE(bt[x].at(longer));
                    }
                }
            });
        }
        for (StateId x = 0; x < w.num_states(); ++x) {
            wt[x].for_each([&](const Word& word, const Natural& v) {
                if (v == 0) {
                    for (Label a = 0; a < w.alphabet.size() && word.size() < 5; ++a) {
                        Word longer = word;
                        longer.push_back(a);
                        CHECK(wt[x].at(longer) == 0);
                    }
                }
            });
        }
    }
}

TEST_CASE("coaltrace::semantics gps trace examples") {
    Gps g{{"x"}, {"a"}, {{{std::nullopt, PartialProb(Rational(1, 2))},
                          {std::make_pair(Label{0}, StateId{0}), PartialProb(Rational(1, 2))}}}};
    auto t = gps_trace(g, 0, 3);
    CHECK(t.at(kEps).value() == Rational(1, 2));
    CHECK(t.at(kA).value() == Rational(1, 4));
    CHECK(t.at(kAA).value() == Rational(1, 8));

    Gps stop{{"x"}, {"a"}, {{{std::nullopt, PartialProb::one()}}}};
    gps_trace(stop, 0, 3).for_each([](const Word& w, const PartialProb& p) {
        CHECK(p.value() == (w.empty() ? 1 : 0));
    });
}

TEST_CASE("coaltrace::semantics gps traces: path sums, mass bound and additivity") {
    std::mt19937 rng(23);
    for (int i = 0; i < 40; ++i) {
        auto g = corpus::random_gps(rng, 3, 2);
        auto tables = gps_trace_all(g, 5);
        for (StateId x = 0; x < g.num_states(); ++x) {
            tables[x].for_each([&](const Word& w, const PartialProb& p) {
                CHECK(p.value() == oracle::gps_paths(g, x, w));
            });
            for (std::size_t l = 0; l <= 5; ++l) {
                auto m = total_mass(tables[x], l);
                REQUIRE(m.has_value());
                CHECK(m->value() <= 1);
            }
        }
        auto words = oracle::all_words(g.alphabet.size(), 5);
        std::vector<Word> left, right;
        for (const auto& w : words) { (corpus::coin(rng, 0.5) ? left : right).push_back(w); }
        auto ml = trace_mass(tables[0], left);
        auto mr = trace_mass(tables[0], right);
        auto all = trace_mass(tables[0], words);
        REQUIRE((ml && mr && all));
        CHECK(all->value() == ml->value() + mr->value());
    }
}

TEST_CASE("coaltrace::semantics duplicate words count once in a trace mass") {
    Gps g{{"x"}, {"a"}, {{{std::nullopt, PartialProb(Rational(1, 2))},
                          {std::make_pair(Label{0}, StateId{0}), PartialProb(Rational(1, 2))}}}};
    auto t = gps_trace(g, 0, 2);
    CHECK(trace_mass(t, {kEps, kEps, kA})->value() == Rational(3, 4));
}

TEST_CASE("coaltrace::semantics tree automaton examples") {
    auto w = binary_wta();
    auto t = wta_trace(w, 0, 2);
    CHECK(t.at(leaf(1)) == 3);
    CHECK(t.at(node(0, {leaf(1), leaf(1)})) == 18);
    CHECK_THROWS_AS(t.at(node(0, {leaf(1)})), ArityMismatch);
    CHECK_THROWS_AS(t.at(node(0, {leaf(1), node(0, {leaf(1), node(0, {leaf(1), leaf(1)})})})), std::out_of_range);

    BottomUpAlgebra<NaturalSemiring> alg(w);
    CHECK(alg.apply(1, {}) == std::vector<Natural>{3});
    CHECK(alg.fold(node(0, {leaf(1), leaf(1)})) == std::vector<Natural>{18});
    CHECK_THROWS_AS(alg.apply(0, {{Natural(1)}}), ArityMismatch);

    WeightedTreeAut<NaturalSemiring> constants{{"x", "y"}, {{"c", 0}}, {{}, {}}};
    constants.trans[0].set(FlatTerm{0, {}}, 4);
    auto tc = wta_trace_all(constants, 2);
    CHECK(tc[0].at(leaf(0)) == 4);
    CHECK(tc[1].at(leaf(0)) == 0);
}

TEST_CASE("coaltrace::semantics tree enumeration counts") {
    Signature sig{{"b", 2}, {"c", 0}};
    // t(h) = 1 + t(h-1)^2 trees of height <= h.
    CHECK(enumerate_trees(sig, 0)->trees.size() == 1);
    CHECK(enumerate_trees(sig, 1)->trees.size() == 2);
    CHECK(enumerate_trees(sig, 2)->trees.size() == 5);
    CHECK(enumerate_trees(sig, 3)->trees.size() == 26);
    CHECK_THROWS_AS(enumerate_trees(sig, 6, 1000), std::length_error);
    auto e = enumerate_trees(sig, 3);
    for (std::size_t i = 0; i < e->trees.size(); ++i) {
        CHECK(e->index.at(e->trees[i]) == i);
        if (i > 0) { CHECK(e->trees[i - 1].height() <= e->trees[i].height()); }
    }
}

TEST_CASE("coaltrace::semantics tree tables agree with run enumeration and bottom-up folding") {
    std::mt19937 rng(31);
    for (int i = 0; i < 20; ++i) {
        auto wb = corpus::random_wta<BooleanSemiring>(rng, 3, {true});
        auto wn = corpus::random_wta<NaturalSemiring>(rng, 3, {Natural(1), Natural(2), Natural(3)});
        auto tb = wta_trace_all(wb, 2);
        auto tn = wta_trace_all(wn, 2);
        BottomUpAlgebra<BooleanSemiring> ab(wb);
        BottomUpAlgebra<NaturalSemiring> an(wn);
        for (const Tree& t : tb[0].trees().trees) {
            auto folded = ab.fold(t);
            for (StateId x = 0; x < wb.num_states(); ++x) {
                CHECK(tb[x].at(t) == oracle::wta_runs(wb, x, t));
                CHECK(folded[x] == tb[x].at(t));
            }
        }
        for (const Tree& t : tn[0].trees().trees) {
            auto folded = an.fold(t);
            for (StateId x = 0; x < wn.num_states(); ++x) {
                CHECK(tn[x].at(t) == oracle::wta_runs(wn, x, t));
                CHECK(folded[x] == tn[x].at(t));
            }
        }
    }
}

TEST_CASE("coaltrace::semantics Boolean tree automata recognise by existence of a run") {
    // Trees over {b:2, c:0} with an even number of leaves at state e.
    WeightedTreeAut<BooleanSemiring> w{{"e", "o"}, {{"b", 2}, {"c", 0}}, {{}, {}}};
    w.trans[1].set(FlatTerm{1, {}}, true);
    w.trans[0].set(FlatTerm{0, {0, 0}}, true);
    w.trans[0].set(FlatTerm{0, {1, 1}}, true);
    w.trans[1].set(FlatTerm{0, {0, 1}}, true);
    w.trans[1].set(FlatTerm{0, {1, 0}}, true);
    auto t = wta_trace_all(w, 3);
    std::function<std::size_t(const Tree&)> leaves = [&](const Tree& u) -> std::size_t {
        if (u.children.empty()) { return 1; }
        return leaves(u.children[0]) + leaves(u.children[1]);
    };
    for (const Tree& u : t[0].trees().trees) {
        CHECK(t[0].at(u) == (leaves(u) % 2 == 0));
        CHECK(t[1].at(u) == (leaves(u) % 2 == 1));
    }
}

TEST_CASE("coaltrace::semantics moore traces follow the transition function") {
    MooreAut<NaturalSemiring> m{{"p", "q"}, {"a", "b"}, {Natural(1), Natural(5)}, {{1, 0}, {1, 1}}};
    auto t = moore_trace(m, 0, 3);
    CHECK(t.at(kEps) == 1);
    CHECK(t.at(Word{0}) == 5);
    CHECK(t.at(Word{1, 1, 1}) == 1);
    CHECK(t.at(Word{1, 0, 1}) == 5);
}

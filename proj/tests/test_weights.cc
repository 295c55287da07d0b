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

#include "coaltrace/weights.hh"

using namespace coaltrace;

namespace {

using BVec = WeightVec<BooleanSemiring>;
using NVec = WeightVec<NaturalSemiring>;

template <Semiring S>
void check_semiring_axioms(const std::vector<typename S::value_type>& sample) {
    for (const auto& a : sample) {
        CHECK(S::add(a, S::zero()) == a);
        CHECK(S::mul(a, S::one()) == a);
        CHECK(S::mul(S::one(), a) == a);
        CHECK(S::mul(a, S::zero()) == S::zero());
        CHECK(S::mul(S::zero(), a) == S::zero());
        for (const auto& b : sample) {
            CHECK(S::add(a, b) == S::add(b, a));
            for (const auto& c : sample) {
                CHECK(S::add(S::add(a, b), c) == S::add(a, S::add(b, c)));
                CHECK(S::mul(S::mul(a, b), c) == S::mul(a, S::mul(b, c)));
                CHECK(S::mul(a, S::add(b, c)) == S::add(S::mul(a, b), S::mul(a, c)));
                CHECK(S::mul(S::add(a, b), c) == S::add(S::mul(a, c), S::mul(b, c)));
            }
        }
    }
}

/// All Boolean vectors over {0..n-1}.
std::vector<BVec> boolean_vectors(std::size_t n) {
    std::vector<BVec> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        BVec v;
        for (StateId x = 0; x < n; ++x) {
            if ((m >> x) & 1U) { v.set(x, true); }
        }
        out.push_back(v);
    }
    return out;
}

template <class K>
std::vector<WeightVec<BooleanSemiring, K>> subsets_of(const std::vector<K>& keys, std::size_t max_support) {
    std::vector<WeightVec<BooleanSemiring, K>> out{{}};
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> extend = [&](std::size_t from) {
        for (std::size_t i = from; i < keys.size(); ++i) {
            pick.push_back(i);
            WeightVec<BooleanSemiring, K> v;
            for (std::size_t p : pick) { v.set(keys[p], true); }
            out.push_back(v);
            if (pick.size() < max_support) { extend(i + 1); }
            pick.pop_back();
        }
    };
    extend(0);
    return out;
}

} // namespace

TEST_CASE("coaltrace::weights semiring axioms hold on samples") {
    check_semiring_axioms<BooleanSemiring>({false, true});
    check_semiring_axioms<NaturalSemiring>({Natural(0), Natural(1), Natural(2), Natural(7)});
    check_semiring_axioms<RationalSemiring>({Rational(0), Rational(1), Rational(-2), Rational(1, 3), Rational(5, 4)});
}

TEST_CASE("coaltrace::weights weight vectors stay canonical") {
    NVec v;
    CHECK(v[3] == 0);
    v.set(3, 2);
    CHECK(v.support_size() == 1);
    v.set(3, 0);
    CHECK(v.empty());
    WeightVec<RationalSemiring> q;
    q.add(1, Rational(1, 2));
    q.add(1, Rational(-1, 2));
    CHECK(q.empty());
    CHECK(q == WeightVec<RationalSemiring>{});
}

TEST_CASE("coaltrace::weights map_weights examples") {
    // a=0, b=1 collapse onto d=0.
    auto collapse = [](StateId) { return StateId{0}; };
    BVec bv;
    bv.set(0, true);
    bv.set(1, true);
    CHECK(map_weights(bv, collapse) == BVec::unit(0));

    NVec nv;
    nv.set(0, 2);
    nv.set(1, 3);
    auto image = map_weights(nv, collapse);
    CHECK(image[0] == 5);
    CHECK(image.support_size() == 1);

    CHECK(map_weights(nv, [](StateId x) { return x; }) == nv);

    // Sums cancelling over the preimage leave no zero entry behind.
    WeightVec<RationalSemiring> q;
    q.set(0, Rational(1, 2));
    q.set(1, Rational(-1, 2));
    CHECK(map_weights(q, collapse).empty());
}

TEST_CASE("coaltrace::weights map_weights functor laws on random vectors") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> weight(0, 4), key(0, 5);
    for (int round = 0; round < 500; ++round) {
        NVec v;
        for (int i = 0; i < 4; ++i) { v.add(static_cast<StateId>(key(rng)), weight(rng)); }
        std::vector<StateId> f(6), g(6);
        for (auto& y : f) { y = static_cast<StateId>(key(rng)); }
        for (auto& y : g) { y = static_cast<StateId>(key(rng)); }
        auto fv = [&](StateId x) { return f[x]; };
        auto gv = [&](StateId x) { return g[x]; };
        CHECK(map_weights(map_weights(v, fv), gv) == map_weights(v, [&](StateId x) { return g[f[x]]; }));
        CHECK(map_weights(v, [](StateId x) { return x; }) == v);
    }
}

TEST_CASE("coaltrace::weights monad multiplication examples") {
    NVec psi;
    psi.set(0, 3);
    WeightVec<NaturalSemiring, NVec> outer;
    outer.set(psi, 2);
    CHECK(monad_mul(outer)[0] == 6);
    CHECK(monad_mul(WeightVec<NaturalSemiring, NVec>::unit(psi)) == psi);

    BVec p1, p2;
    p1.set(0, true);
    p2.set(1, true);
    p2.set(2, true);
    WeightVec<BooleanSemiring, BVec> both;
    both.set(p1, true);
    both.set(p2, true);
    auto joined = monad_mul(both);
    CHECK(joined.support() == std::vector<StateId>{0, 1, 2});
}

TEST_CASE("coaltrace::weights Boolean monad laws exhaustively up to three states") {
    for (std::size_t n = 0; n <= 3; ++n) {
        auto vecs = boolean_vectors(n);
        for (const auto& v : vecs) {
            // mu . eta = id = mu . M eta
            CHECK(monad_mul(WeightVec<BooleanSemiring, BVec>::unit(v)) == v);
            CHECK(monad_mul(map_weights(v, [](StateId x) { return BVec::unit(x); })) == v);
        }
        // Associativity on all of MMX for outer supports up to two elements of MMX.
        auto twice = subsets_of(vecs, vecs.size());
        auto thrice = subsets_of(twice, 2);
        for (const auto& xi : thrice) {
            auto left = monad_mul(monad_mul(xi));
            auto right = monad_mul(map_weights(xi, [](const WeightVec<BooleanSemiring, BVec>& w) { return monad_mul(w); }));
            CHECK(left == right);
        }
    }
}

TEST_CASE("coaltrace::weights partial probability addition") {
    PartialProb half(Rational(1, 2)), quarter(Rational(1, 4)), three(Rational(3, 4));
    REQUIRE(prob_add(half, quarter).has_value());
    CHECK(prob_add(half, quarter)->value() == Rational(3, 4));
    CHECK_FALSE(prob_add(three, three).has_value());
    CHECK(*prob_add(half, PartialProb::zero()) == half);
    CHECK(prob_add(half, half)->value() == 1);
    CHECK(prob_mul(half, quarter).value() == Rational(1, 8));
    CHECK_FALSE(prob_sum({half, three, PartialProb::zero()}).has_value());
    CHECK(prob_sum({quarter, quarter, half})->value() == 1);
    CHECK_THROWS_AS(PartialProb(Rational(5, 4)), std::invalid_argument);
    CHECK_THROWS_AS(PartialProb(Rational(-1, 4)), std::invalid_argument);
}

TEST_CASE("coaltrace::weights partial addition is commutative and associative where defined") {
    std::vector<PartialProb> sample;
    for (int d = 1; d <= 4; ++d) {
        for (int k = 0; k <= d; ++k) { sample.emplace_back(Rational(k, d)); }
    }
    for (const auto& p : sample) {
        for (const auto& q : sample) {
            CHECK(prob_add(p, q) == prob_add(q, p));
            for (const auto& r : sample) {
                auto pq = prob_add(p, q);
                auto qr = prob_add(q, r);
                std::optional<PartialProb> left = pq ? prob_add(*pq, r) : std::nullopt;
                std::optional<PartialProb> right = qr ? prob_add(p, *qr) : std::nullopt;
                // Defined on one side with a sum <= 1 implies defined on the other.
                if (left && right) { CHECK(*left == *right); }
                if ((p.value() + q.value() + r.value()) <= 1) {
                    CHECK(left.has_value());
                    CHECK(right.has_value());
                }
            }
        }
    }
}

TEST_CASE("coaltrace::weights parsing and printing of weights") {
    CHECK(RationalSemiring::parse("2/4") == Rational(1, 2));
    CHECK(RationalSemiring::parse("-3") == Rational(-3));
    CHECK(rational_fraction(Rational(3)) == "3/1");
    CHECK(rational_fraction(Rational(-1, 2)) == "-1/2");
    CHECK(NaturalSemiring::parse("123456789012345678901234567890").str() == "123456789012345678901234567890");
    CHECK_THROWS(NaturalSemiring::parse("-1"));
    CHECK_THROWS(RationalSemiring::parse("1/0"));
    CHECK(BooleanSemiring::parse("tt"));
}

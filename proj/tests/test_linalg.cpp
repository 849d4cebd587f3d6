#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace abstab;
using namespace abstab::testutil;

namespace {

// Matrix of a well-defined homomorphism dom -> cod: each entry is a multiple
// of c_i / gcd(c_i, d_j).
IntMat random_hom_matrix(CounterRng& rng, const Group& dom, const Group& cod) {
    IntMat m(cod.factor_count(), dom.factor_count());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            Int g = gcd(cod.modulus(i), dom.modulus(j));
            m(i, j) = exact_div(cod.modulus(i), g) * rng.below(g);
        }
    return m;
}

IntMat random_matrix(CounterRng& rng, long rows, long cols, long span) {
    IntMat m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m(i, j) = Int(rng.below(2 * span + 1)) - span;
    return m;
}

void check_snf(const IntMat& a) {
    SnfFull f = smith_normal_form_full(a);
    CHECK(f.U * f.S * f.V == a);
    CHECK(f.U * f.Uinv == IntMat::Identity(a.rows(), a.rows()));
    CHECK(f.V * f.Vinv == IntMat::Identity(a.cols(), a.cols()));
    CHECK(abs(determinant(f.U)) == 1);
    CHECK(abs(determinant(f.V)) == 1);
    const Eigen::Index r = std::min(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < r; ++i) {
        CHECK(f.S(i, i) >= 0);
        if (i + 1 < r && f.S(i, i) != 0) CHECK(mod(f.S(i + 1, i + 1), f.S(i, i)) == 0);
        if (f.S(i, i) == 0 && i + 1 < r) CHECK(f.S(i + 1, i + 1) == 0);
    }
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (i != j) CHECK(f.S(i, j) == 0);
}

}  // namespace

TEST_CASE("smith normal form of diag(2,3)") {
    IntMat a(2, 2);
    a << 2, 0, 0, 3;
    SnfDecomposition d = smith_normal_form(a);
    CHECK(d.S(0, 0) == 1);
    CHECK(d.S(1, 1) == 6);
    CHECK(d.U * d.S * d.V == a);
}

TEST_CASE("smith normal form on random matrices") {
    CounterRng rng(21);
    for (int i = 0; i < 60; ++i) {
        long rows = 1 + lrand(rng, 5), cols = 1 + lrand(rng, 5);
        check_snf(random_matrix(rng, rows, cols, 30));
    }
    check_snf(IntMat::Zero(3, 2));
    check_snf(IntMat::Identity(4, 4));
}

TEST_CASE("smith normal form with huge entries") {
    CounterRng rng(22);
    Int big = Int(1) << 64;
    IntMat a(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = rng.below(big) - (big >> 1);
    check_snf(a);
}

TEST_CASE("integer lattice solve") {
    IntMat a(2, 3);
    a << 2, 4, 6, 1, 2, 3;
    IntVec b(2);
    b << 4, 2;
    auto sol = solve_integer(a, b);
    REQUIRE(sol.has_value());
    CHECK(a * sol->x0 == b);
    for (Eigen::Index c = 0; c < sol->kernel.cols(); ++c)
        CHECK((a * sol->kernel.col(c)).isZero());

    b << 1, 1;
    CHECK(!solve_integer(a, b).has_value());
}

TEST_CASE("solve_system matches the spec example on Z4") {
    Group z4{4};
    IntMat a(1, 1);
    a << 2;
    auto sol = solve_system(z4, z4, a, element(z4, {2}));
    REQUIRE(sol.has_value());
    CHECK(count_solutions(z4, z4, a, element(z4, {2})) == 2);
    CHECK(count_solutions(z4, z4, a, element(z4, {1})) == 0);
    CHECK(!solve_system(z4, z4, a, element(z4, {1})).has_value());
}

TEST_CASE("solve_system solution sets match enumeration") {
    CounterRng rng(23);
    for (int trial = 0; trial < 80; ++trial) {
        Group dom = random_group(rng, 40, 3);
        Group cod = random_group(rng, 40, 3);
        IntMat a = random_hom_matrix(rng, dom, cod);
        GroupElement b = random_element(rng, cod);

        std::set<std::vector<long>> found;
        for (const GroupElement& x : all_elements(dom)) {
            IntVec img = a * x.residues();
            GroupElement gx(cod, img);
            if (gx == b) {
                std::vector<long> key;
                for (Eigen::Index i = 0; i < x.residues().size(); ++i)
                    key.push_back(x.residue(i).get_si());
                found.insert(key);
            }
        }

        auto sol = solve_system(dom, cod, a, b);
        CHECK(count_solutions(dom, cod, a, b) == Int(found.size()));
        if (found.empty()) {
            CHECK(!sol.has_value());
            continue;
        }
        REQUIRE(sol.has_value());

        // Enumerate the reported coset and compare with brute force.
        std::set<std::vector<long>> reported;
        Int total = 1;
        for (const Int& s : sol->kernel_structure) total *= s;
        for (Int idx = 0; idx < total; ++idx) {
            Int rest = idx;
            GroupElement x = sol->x0;
            for (size_t i = 0; i < sol->kernel_gens.size(); ++i) {
                Int k = mod(rest, sol->kernel_structure[i]);
                rest = exact_div(rest - k, sol->kernel_structure[i]);
                x = x + sol->kernel_gens[i] * k;
            }
            std::vector<long> key;
            for (Eigen::Index i = 0; i < x.residues().size(); ++i)
                key.push_back(x.residue(i).get_si());
            reported.insert(key);
        }
        CHECK(reported == found);
    }
}

TEST_CASE("membership") {
    Group z12{12};
    SubgroupGens h{z12, {element(z12, {2})}};
    auto w = membership(element(z12, {8}), h);
    REQUIRE(w.has_value());
    CHECK((element(z12, {2}) * (*w)(0)) == element(z12, {8}));
    CHECK(!membership(element(z12, {3}), h).has_value());

    SubgroupGens empty = SubgroupGens::trivial(z12);
    CHECK(membership(GroupElement::zero(z12), empty).has_value());
    CHECK(!membership(element(z12, {1}), empty).has_value());
}

TEST_CASE("subgroup order") {
    Group z12{12};
    CHECK(subgroup_order({z12, {element(z12, {2})}}) == 6);
    CHECK(subgroup_order({z12, {element(z12, {4}), element(z12, {6})}}) == 6);
    CHECK(subgroup_order(SubgroupGens::trivial(z12)) == 1);
    CHECK(subgroup_order(SubgroupGens::whole(z12)) == 12);
}

TEST_CASE("intersection in Z12") {
    Group z12{12};
    SubgroupGens h{z12, {element(z12, {2})}};
    SubgroupGens k{z12, {element(z12, {3})}};
    SubgroupGens m = intersect(h, k);
    CHECK(subgroup_order(m) == 2);
    CHECK(subgroup_contains(m, element(z12, {6})));
}

TEST_CASE("intersection brute force") {
    CounterRng rng(24);
    for (int trial = 0; trial < 40; ++trial) {
        Group g = random_group(rng, 64, 3);
        SubgroupGens h{g, {random_element(rng, g), random_element(rng, g)}};
        SubgroupGens k{g, {random_element(rng, g)}};
        SubgroupGens m = intersect(h, k);
        Int count = 0;
        for (const GroupElement& x : all_elements(g)) {
            bool both = subgroup_contains(h, x) && subgroup_contains(k, x);
            CHECK(subgroup_contains(m, x) == both);
            if (both) ++count;
        }
        CHECK(subgroup_order(m) == count);
    }
}

TEST_CASE("annihilator of <2> in Z4 is itself") {
    Group z4{4};
    SubgroupGens h{z4, {element(z4, {2})}};
    SubgroupGens perp = annihilator(h);
    CHECK(subgroup_order(perp) == 2);
    CHECK(subgroup_contains(perp, element(z4, {2})));
}

TEST_CASE("annihilator laws") {
    CounterRng rng(25);
    for (int trial = 0; trial < 40; ++trial) {
        Group g = random_group(rng, 64, 3);
        SubgroupGens h{g, {random_element(rng, g), random_element(rng, g)}};
        SubgroupGens perp = annihilator(h);
        CHECK(subgroup_order(h) * subgroup_order(perp) == g.order());
        SubgroupGens back = annihilator(perp);
        CHECK(subgroup_order(back) == subgroup_order(h));
        for (const GroupElement& gen : h.generators) CHECK(subgroup_contains(back, gen));
        for (const GroupElement& mu : perp.generators)
            for (const GroupElement& gen : h.generators)
                CHECK(character_exp(mu, gen).exponent() == 0);
    }
}

TEST_CASE("independent generators of <2,3> in Z6") {
    Group z6{6};
    auto [gens, orders] = independent_generators({z6, {element(z6, {2}), element(z6, {3})}});
    REQUIRE(gens.size() == 1);
    CHECK(orders[0] == 6);
    CHECK(element_order(gens[0]) == 6);
}

TEST_CASE("independent generators span the same subgroup") {
    CounterRng rng(26);
    for (int trial = 0; trial < 40; ++trial) {
        Group g = random_group(rng, 64, 3);
        SubgroupGens h{g, {random_element(rng, g), random_element(rng, g)}};
        auto [gens, orders] = independent_generators(h);
        Int prod = 1;
        for (size_t i = 0; i < gens.size(); ++i) {
            CHECK(orders[i] > 1);
            CHECK(element_order(gens[i]) == orders[i]);
            CHECK(subgroup_contains(h, gens[i]));
            prod *= orders[i];
        }
        CHECK(prod == subgroup_order(h));
        SubgroupGens h2{g, gens};
        for (const GroupElement& gen : h.generators) CHECK(subgroup_contains(h2, gen));
    }
}

TEST_CASE("character systems") {
    Group z4{4};
    // chi_2(g) = -1  <=>  g odd.
    auto sol = solve_character_system(z4, {{element(z4, {2}), PhaseExp(4, 8)}});
    REQUIRE(sol.has_value());
    CHECK(mod(sol->first.residue(0), 2) == 1);
    CHECK(subgroup_order(sol->second) == 2);

    // chi_2(g) = gamma is unsatisfiable (odd exponent).
    CHECK(!solve_character_system(z4, {{element(z4, {2}), PhaseExp(1, 8)}}).has_value());
    // chi_0(g) = -1 is unsatisfiable.
    CHECK(!solve_character_system(z4, {{GroupElement::zero(z4), PhaseExp(4, 8)}}).has_value());
}

TEST_CASE("character systems vs brute force") {
    CounterRng rng(27);
    for (int trial = 0; trial < 40; ++trial) {
        Group g = random_group(rng, 64, 3);
        std::vector<std::pair<GroupElement, PhaseExp>> pairs;
        int n = 1 + static_cast<int>(lrand(rng, 2));
        for (int i = 0; i < n; ++i) {
            GroupElement h = random_element(rng, g);
            Int a = Int(2) * rng.below(g.order());
            pairs.emplace_back(h, PhaseExp(a, g.phase_modulus()));
        }
        std::vector<GroupElement> hits;
        for (const GroupElement& x : all_elements(g)) {
            bool ok = true;
            for (auto& [h, a] : pairs)
                if (character_exp(h, x) != a) ok = false;
            if (ok) hits.push_back(x);
        }
        auto sol = solve_character_system(g, pairs);
        if (hits.empty()) {
            CHECK(!sol.has_value());
            continue;
        }
        REQUIRE(sol.has_value());
        CHECK(subgroup_order(sol->second) == Int(hits.size()));
        for (const GroupElement& x : hits) CHECK(subgroup_contains(sol->second, x - sol->first));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace abstab;
using namespace abstab::testutil;

namespace {

Instruction gate_ins(NormalizerGate g) {
    return Instruction{Instruction::Gate{std::move(g)}};
}

Circuit bell_circuit() {
    Group g{2, 2};
    Circuit c;
    c.group = g;
    c.input = GroupElement::zero(g);
    c.instructions.push_back(gate_ins(NormalizerGate::qft(g, {0})));
    IntMat cnot(2, 2);
    cnot << 1, 0, 1, 1;
    c.instructions.push_back(gate_ins(NormalizerGate::automorphism(HomMatrix(g, g, cnot))));
    return c;
}

dense::CVec dense_run(const Circuit& c) {
    dense::CVec psi = dense::basis_state(c.input);
    for (const Instruction& ins : c.instructions) {
        const auto* g = std::get_if<Instruction::Gate>(&ins.body);
        REQUIRE(g != nullptr);
        psi = dense::gate_matrix(g->gate) * psi;
    }
    return psi;
}

dense::CVec state_vector(const StabilizerGroup& s) {
    dense::CVec psi = dense::CVec::Zero(s.group().order().get_si());
    for (const GroupElement& x : all_elements(s.group())) {
        auto amp = s.amplitude(x);
        if (!amp) continue;
        psi(dense::index_of(x)) = dense::phase_value(amp->first) / std::sqrt(amp->second.get_d());
    }
    return psi;
}

}  // namespace

TEST_CASE("initial stabilizer of a basis state") {
    Group z4{4};
    CounterRng rng(70);
    EngineState st = initialize(z4, element(z4, {1}), rng);
    REQUIRE(st.stabilizer.generators().size() == 1);
    const PauliOperator& gen = st.stabilizer.generators()[0];
    CHECK(gen.z == element(z4, {1}));
    CHECK(gen.x.is_zero());
    CHECK(gen.a == PhaseExp(-2, 8));
    auto amp = st.stabilizer.amplitude(element(z4, {1}));
    REQUIRE(amp.has_value());
    CHECK(amp->first.exponent() == 0);
    CHECK(amp->second == 1);
}

TEST_CASE("bell circuit produces the bell state") {
    Circuit c = bell_circuit();
    Transcript t = run(c, CounterRng(0));
    Group g = c.group;
    auto a00 = t.final_stabilizer.amplitude(element(g, {0, 0}));
    auto a11 = t.final_stabilizer.amplitude(element(g, {1, 1}));
    REQUIRE(a00.has_value());
    REQUIRE(a11.has_value());
    CHECK(a00->first.exponent() == 0);
    CHECK(a11->first.exponent() == 0);
    CHECK(a00->second == 2);
    CHECK(!t.final_stabilizer.amplitude(element(g, {0, 1})).has_value());
    CHECK(!t.final_stabilizer.amplitude(element(g, {1, 0})).has_value());
}

TEST_CASE("bell measurement outcomes are perfectly correlated") {
    Circuit c = bell_circuit();
    c.instructions.push_back(Instruction{Instruction::MeasureRegister{0, "m0"}});
    c.instructions.push_back(Instruction{Instruction::MeasureRegister{1, "m1"}});
    std::map<Int, int> counts;
    for (long shot = 0; shot < 100; ++shot) {
        Transcript t = run(c, CounterRng::for_shot(99, shot));
        CHECK(t.outcomes.at("m0") == t.outcomes.at("m1"));
        counts[t.outcomes.at("m0")]++;
        REQUIRE(t.records.size() == 2);
        CHECK(t.records[0].probability == Rat(1, 2));
        CHECK(t.records[1].probability == 1);  // second outcome is forced
    }
    CHECK(counts.size() == 2);
}

TEST_CASE("random unitary circuits match dense evolution") {
    CounterRng rng(71);
    for (int trial = 0; trial < 60; ++trial) {
        Group g = random_group(rng, 36, 3);
        Circuit c;
        c.group = g;
        c.input = random_element(rng, g);
        long depth = 1 + lrand(rng, 8);
        for (long i = 0; i < depth; ++i)
            c.instructions.push_back(gate_ins(random_gate(rng, g)));
        Transcript t = run(c, CounterRng(0));
        // the stabilizer pins the state only up to a global phase
        CHECK(state_distance_up_to_phase(state_vector(t.final_stabilizer), dense_run(c)) <
              1e-9);
    }
}

TEST_CASE("measure_register reports canonical residues") {
    Group z4{4};
    Circuit c;
    c.group = z4;
    c.input = element(z4, {3});
    c.instructions.push_back(Instruction{Instruction::MeasureRegister{0, "m"}});
    Transcript t = run(c, CounterRng(5));
    CHECK(t.outcomes.at("m") == 3);
    CHECK(t.records.size() == 1);
    CHECK(t.records[0].probability == 1);
}

TEST_CASE("measure_pauli stores the eigenvalue exponent") {
    Group z2{2};
    Circuit c;
    c.group = z2;
    c.input = element(z2, {1});
    c.instructions.push_back(
        Instruction{Instruction::MeasurePauli{PauliOperator::z_op(element(z2, {1})), "p"}});
    Transcript t = run(c, CounterRng(0));
    CHECK(t.outcomes.at("p") == 2);  // eigenvalue gamma^2 = -1 on |1>
}

TEST_CASE("coset state preparation is deterministic") {
    Group z4{4};
    SubgroupGens h{z4, {element(z4, {2})}};
    Circuit c = prepare_coset_state(h, GroupElement::zero(z4));
    c.validate();
    REQUIRE(!c.main_registers.empty());
    CHECK(c.main_registers == std::vector<Eigen::Index>{0});
    for (long shot = 0; shot < 20; ++shot) {
        Transcript t = run(c, CounterRng::for_shot(7, shot));
        // collect the measured ancilla residues to pin the full basis point
        const Group& full = c.group;
        IntVec point = IntVec::Zero(full.factor_count());
        for (const MeasurementRecord& r : t.records)
            if (r.key.rfind("anc", 0) == 0)
                point(1 + std::stol(r.key.substr(3))) = r.value;
        for (long x = 0; x < 4; ++x) {
            point(0) = x;
            auto amp = t.final_stabilizer.amplitude(GroupElement(full, point));
            if (x % 2 == 0) {
                REQUIRE(amp.has_value());
                CHECK(amp->first.exponent() == 0);
                CHECK(amp->second == 2);
            } else {
                CHECK(!amp.has_value());
            }
        }
    }
}

TEST_CASE("coset state preparation for a shifted coset") {
    Group g{2, 2};
    SubgroupGens h{g, {element(g, {1, 1})}};
    Circuit c = prepare_coset_state(h, element(g, {1, 0}));
    for (long shot = 0; shot < 20; ++shot) {
        Transcript t = run(c, CounterRng::for_shot(11, shot));
        const Group& full = c.group;
        IntVec point = IntVec::Zero(full.factor_count());
        for (const MeasurementRecord& r : t.records)
            if (r.key.rfind("anc", 0) == 0)
                point(2 + std::stol(r.key.substr(3))) = r.value;
        int on = 0;
        for (long a = 0; a < 2; ++a)
            for (long b = 0; b < 2; ++b) {
                point(0) = a;
                point(1) = b;
                auto amp = t.final_stabilizer.amplitude(GroupElement(full, point));
                bool in_coset = ((a + 1) % 2 == b);
                CHECK(amp.has_value() == in_coset);
                if (amp) {
                    CHECK(amp->first.exponent() == 0);
                    ++on;
                }
            }
        CHECK(on == 2);
    }
}

TEST_CASE("coset correction with a missing key fails validation") {
    Group z4{4};
    Circuit c;
    c.group = z4;
    c.input = GroupElement::zero(z4);
    Instruction::CosetCorrect cc{GroupElement::zero(z4), HomMatrix::identity(z4), {"gone"}};
    c.instructions.push_back(Instruction{std::move(cc)});
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_THROWS_AS(run(c, CounterRng(0)), std::invalid_argument);
}

TEST_CASE("unsolvable runtime correction raises a circuit error") {
    Group z4{4};
    Circuit c;
    c.group = z4;
    c.input = element(z4, {1});
    c.instructions.push_back(Instruction{Instruction::MeasureRegister{0, "m"}});
    IntMat two(1, 1);
    two << 2;
    c.instructions.push_back(Instruction{Instruction::CosetCorrect{
        GroupElement::zero(z4), HomMatrix(z4, z4, two), {"m"}}});
    c.validate();
    // measured value is 1 and 2 g' = 1 has no solution in Z4
    CHECK_THROWS_AS(run(c, CounterRng(0)), CircuitError);
}

TEST_CASE("circuit validation rejects group mismatches and bad registers") {
    Group z4{4}, z2{2};
    Circuit c;
    c.group = z4;
    c.input = element(z2, {1});
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c.input = GroupElement::zero(z4);
    c.instructions.push_back(Instruction{Instruction::MeasureRegister{3, "m"}});
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c.instructions.clear();
    c.instructions.push_back(Instruction{Instruction::MeasureRegister{0, "m"}});
    c.instructions.push_back(Instruction{Instruction::MeasureRegister{0, "m"}});
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("adaptive teleportation-style correction") {
    // Prepare (|00> + |11>)/sqrt(2), measure register 0, then shift register 1
    // by the observed value; the payload register always ends in |0>.
    Group g{2, 2};
    Circuit c = bell_circuit();
    c.instructions.push_back(Instruction{Instruction::MeasureRegister{0, "m"}});
    IntMat omega(1, 2);
    omega << 0, 1;
    Group z2{2};
    Instruction::CosetCorrect cc{GroupElement::zero(g), HomMatrix(g, z2, omega), {"m"}};
    c.instructions.push_back(Instruction{std::move(cc)});
    for (long shot = 0; shot < 30; ++shot) {
        Transcript t = run(c, CounterRng::for_shot(13, shot));
        Int m = t.outcomes.at("m");
        IntVec want(2);
        want << m, 0;
        auto amp = t.final_stabilizer.amplitude(GroupElement(g, want));
        REQUIRE(amp.has_value());
        CHECK(amp->second == 1);
    }
}

#include "abstab/circuit.hpp"

#include <set>

namespace abstab {

void Circuit::validate() const {
    require_same_group(input.group(), group);
    std::set<std::string> stored;
    for (const Instruction& ins : instructions) {
        if (const auto* g = std::get_if<Instruction::Gate>(&ins.body)) {
            require_same_group(g->gate.group(), group);
        } else if (const auto* mp = std::get_if<Instruction::MeasurePauli>(&ins.body)) {
            require_same_group(mp->op.group(), group);
            if (mp->store.empty() || !stored.insert(mp->store).second)
                throw std::invalid_argument("circuit: missing or duplicate store key");
        } else if (const auto* mr = std::get_if<Instruction::MeasureRegister>(&ins.body)) {
            if (mr->reg < 0 || mr->reg >= group.factor_count())
                throw std::invalid_argument("circuit: register out of range");
            if (mr->store.empty() || !stored.insert(mr->store).second)
                throw std::invalid_argument("circuit: missing or duplicate store key");
        } else if (const auto* cc = std::get_if<Instruction::CosetCorrect>(&ins.body)) {
            require_same_group(cc->target.group(), group);
            require_same_group(cc->omega.domain(), group);
            if (!cc->omega.validate())
                throw std::invalid_argument("circuit: invalid correction homomorphism");
            if (static_cast<Eigen::Index>(cc->outcome_keys.size()) !=
                cc->omega.codomain().factor_count())
                throw std::invalid_argument("circuit: outcome key count mismatch");
            for (const std::string& k : cc->outcome_keys)
                if (!stored.count(k))
                    throw std::invalid_argument("circuit: outcome key not stored earlier");
        }
    }
    for (Eigen::Index r : main_registers)
        if (r < 0 || r >= group.factor_count())
            throw std::invalid_argument("circuit: main register out of range");
}

EngineState initialize(const Group& g, const GroupElement& input, CounterRng rng) {
    require_same_group(input.group(), g);
    std::vector<PauliOperator> gens;
    for (Eigen::Index i = 0; i < g.factor_count(); ++i) {
        GroupElement e = GroupElement::unit(g, i);
        gens.push_back({-character_exp(e, input), e, GroupElement::zero(g)});
    }
    return {StabilizerGroup::unchecked(g, std::move(gens)), {}, rng};
}

namespace {

void apply_gate(EngineState& state, const NormalizerGate& gate) {
    std::vector<PauliOperator> gens;
    gens.reserve(state.stabilizer.generators().size());
    for (const PauliOperator& s : state.stabilizer.generators())
        gens.push_back(conjugate(gate, s));
    state.stabilizer = StabilizerGroup::unchecked(state.stabilizer.group(), std::move(gens));
}

void record_measurement(std::vector<MeasurementRecord>* records, const std::string& key,
                        const Int& value, const MeasurementOutcome& mo) {
    if (records)
        records->push_back({key, value, mo.eigenvalue_exp, mo.probability});
}

}  // namespace

void step(EngineState& state, const Instruction& ins,
          std::vector<MeasurementRecord>* records) {
    const Group& g = state.stabilizer.group();
    if (const auto* gi = std::get_if<Instruction::Gate>(&ins.body)) {
        apply_gate(state, gi->gate);
    } else if (const auto* mp = std::get_if<Instruction::MeasurePauli>(&ins.body)) {
        MeasurementOutcome mo = measure_pauli(state.stabilizer, mp->op, state.rng);
        state.stabilizer = mo.post_stabilizer;
        const Int& e = mo.eigenvalue_exp.exponent();
        state.classical[mp->store] = e;
        record_measurement(records, mp->store, e, mo);
    } else if (const auto* mr = std::get_if<Instruction::MeasureRegister>(&ins.body)) {
        PauliOperator t = PauliOperator::z_op(GroupElement::unit(g, mr->reg));
        MeasurementOutcome mo = measure_pauli(state.stabilizer, t, state.rng);
        state.stabilizer = mo.post_stabilizer;
        // lambda = gamma^(step y) = e^(2 pi i y / d); store the residue y.
        const Int step_size = exact_div(g.phase_modulus(), g.modulus(mr->reg));
        const Int y = exact_div(mo.eigenvalue_exp.exponent(), step_size);
        state.classical[mr->store] = y;
        record_measurement(records, mr->store, y, mo);
    } else if (const auto* cc = std::get_if<Instruction::CosetCorrect>(&ins.body)) {
        const Group& cod = cc->omega.codomain();
        IntVec b(cod.factor_count());
        for (Eigen::Index i = 0; i < b.size(); ++i) {
            auto it = state.classical.find(cc->outcome_keys[static_cast<size_t>(i)]);
            if (it == state.classical.end())
                throw CircuitError("coset correction: outcome not recorded");
            b(i) = it->second;
        }
        auto sol = solve(cc->omega, GroupElement(cod, std::move(b)));
        if (!sol) throw CircuitError("coset correction: unsolvable system");
        // Leave registers the correction homomorphism does not constrain
        // untouched.
        IntVec gp = sol->x0.residues();
        for (Eigen::Index j = 0; j < gp.size(); ++j) {
            bool unconstrained = true;
            for (Eigen::Index i = 0; i < cc->omega.entries().rows(); ++i)
                if (cc->omega.entries()(i, j) != 0) unconstrained = false;
            if (unconstrained) gp(j) = 0;
        }
        GroupElement shift = cc->target - GroupElement(g, std::move(gp));
        apply_gate(state, NormalizerGate::pauli(PauliOperator::x_op(shift)));
    }
}

Transcript run(const Circuit& c, CounterRng rng) {
    c.validate();
    EngineState state = initialize(c.group, c.input, rng);
    std::vector<MeasurementRecord> records;
    for (const Instruction& ins : c.instructions) step(state, ins, &records);
    return {std::move(state.classical), std::move(records), std::move(state.stabilizer)};
}

Circuit prepare_coset_state(const SubgroupGens& H, const GroupElement& x) {
    const Group& g = H.group;
    require_same_group(x.group(), g);
    const Eigen::Index m = g.factor_count();
    HomMatrix om = kernel_hom(H);
    const Group& anc = om.codomain();
    const Eigen::Index r = anc.factor_count();
    const Group big = Group::product(g, anc);

    Circuit c;
    c.group = big;
    c.input = GroupElement::zero(big);
    for (Eigen::Index i = 0; i < m; ++i) c.main_registers.push_back(i);

    std::vector<Eigen::Index> mains = c.main_registers;
    c.instructions.push_back({Instruction::Gate{NormalizerGate::qft(big, mains)}});

    // (g, h) -> (g, h + omega(g)) entangles each group element with its
    // H-coset label.
    IntMat A = IntMat::Identity(m + r, m + r);
    A.block(m, 0, r, m) = om.entries();
    c.instructions.push_back(
        {Instruction::Gate{NormalizerGate::automorphism(HomMatrix(big, big, std::move(A)))}});

    std::vector<std::string> keys;
    for (Eigen::Index i = 0; i < r; ++i) {
        keys.push_back("anc" + std::to_string(i));
        c.instructions.push_back({Instruction::MeasureRegister{m + i, keys.back()}});
    }

    IntMat lift = IntMat::Zero(r, m + r);
    lift.leftCols(m) = om.entries();
    IntVec tx = IntVec::Zero(m + r);
    tx.head(m) = x.residues();
    c.instructions.push_back({Instruction::CosetCorrect{
        GroupElement(big, std::move(tx)), HomMatrix(big, anc, std::move(lift)),
        std::move(keys)}});
    return c;
}

}  // namespace abstab

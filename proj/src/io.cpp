#include "abstab/io.hpp"

#include <fstream>

namespace abstab::io {

namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw ParseError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

}  // namespace

Int int_from_json(const Json& j) {
    try {
        if (j.is_string()) return Int(j.get<std::string>(), 10);
        if (j.is_number_integer()) return Int(j.get<long>());
    } catch (const std::invalid_argument&) {
    }
    throw ParseError("expected an integer (decimal string)");
}

Rat rat_from_json(const Json& j) {
    try {
        if (j.is_string()) {
            Rat r(j.get<std::string>(), 10);
            r.canonicalize();
            return r;
        }
        if (j.is_number_integer()) return Rat(j.get<long>());
    } catch (const std::invalid_argument&) {
    }
    throw ParseError("expected a rational (\"p/q\" string)");
}

std::string int_to_string(const Int& x) { return x.get_str(); }

std::string rat_to_string(const Rat& x) { return x.get_str(); }

Json group_to_json(const Group& g) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < g.factor_count(); ++i)
        a.push_back(int_to_string(g.modulus(i)));
    return a;
}

Group group_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("group: expected an array of moduli");
    IntVec moduli(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < moduli.size(); ++i)
        moduli(i) = int_from_json(j[static_cast<size_t>(i)]);
    return Group(std::move(moduli));
}

Json element_to_json(const GroupElement& g) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < g.residues().size(); ++i)
        a.push_back(int_to_string(g.residue(i)));
    return a;
}

GroupElement element_from_json(const Json& j, const Group& g) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != g.factor_count())
        throw ParseError("element: expected one residue per group factor");
    IntVec r(g.factor_count());
    for (Eigen::Index i = 0; i < r.size(); ++i)
        r(i) = int_from_json(j[static_cast<size_t>(i)]);
    return GroupElement(g, std::move(r));
}

Json matrix_to_json(const IntMat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(int_to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMat matrix_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("matrix: expected an array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = 0;
    if (rows > 0) {
        if (!j[0].is_array()) throw ParseError("matrix: expected an array of rows");
        cols = static_cast<Eigen::Index>(j[0].size());
    }
    IntMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ParseError("matrix: ragged rows");
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = int_from_json(row[static_cast<size_t>(k)]);
    }
    return m;
}

namespace {

// Entries accepted either nested by rows or as a flat row-major array.
IntMat entries_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array()) throw ParseError("entries: expected an array");
    if (!j.empty() && j[0].is_array()) {
        IntMat m = matrix_from_json(j);
        if (m.rows() != rows || m.cols() != cols)
            throw ParseError("entries: shape mismatch");
        return m;
    }
    if (static_cast<Eigen::Index>(j.size()) != rows * cols)
        throw ParseError("entries: shape mismatch");
    IntMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = int_from_json(j[static_cast<size_t>(i * cols + k)]);
    return m;
}

}  // namespace

Json hom_to_json(const HomMatrix& h) {
    Json j;
    j["domain"] = group_to_json(h.domain());
    j["codomain"] = group_to_json(h.codomain());
    j["entries"] = matrix_to_json(h.entries());
    return j;
}

HomMatrix hom_from_json(const Json& j) {
    Group dom = group_from_json(field(j, "domain"));
    Group cod = group_from_json(field(j, "codomain"));
    IntMat entries =
        entries_from_json(field(j, "entries"), cod.factor_count(), dom.factor_count());
    return HomMatrix(std::move(dom), std::move(cod), std::move(entries));
}

Json pauli_to_json(const PauliOperator& p) {
    Json j;
    j["a"] = int_to_string(p.a.exponent());
    j["z"] = element_to_json(p.z);
    j["x"] = element_to_json(p.x);
    return j;
}

PauliOperator pauli_from_json(const Json& j, const Group& g) {
    return {PhaseExp(int_from_json(field(j, "a")), g.phase_modulus()),
            element_from_json(field(j, "z"), g), element_from_json(field(j, "x"), g)};
}

QuadraticFunction quadratic_from_json(const Json& mj, const Json& vj, const Group& g) {
    const Eigen::Index m = g.factor_count();
    if (!mj.is_array()) throw ParseError("quadratic: expected an array for M");
    RatMat M(m, m);
    if (!mj.empty() && mj[0].is_array()) {
        if (static_cast<Eigen::Index>(mj.size()) != m)
            throw ParseError("quadratic: M shape mismatch");
        for (Eigen::Index i = 0; i < m; ++i) {
            const Json& row = mj[static_cast<size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m)
                throw ParseError("quadratic: M shape mismatch");
            for (Eigen::Index k = 0; k < m; ++k)
                M(i, k) = rat_from_json(row[static_cast<size_t>(k)]);
        }
    } else {
        if (static_cast<Eigen::Index>(mj.size()) != m * m)
            throw ParseError("quadratic: M shape mismatch");
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index k = 0; k < m; ++k)
                M(i, k) = rat_from_json(mj[static_cast<size_t>(i * m + k)]);
    }
    if (!vj.is_array() || static_cast<Eigen::Index>(vj.size()) != m)
        throw ParseError("quadratic: v shape mismatch");
    RatVec v(m);
    for (Eigen::Index i = 0; i < m; ++i) v(i) = rat_from_json(vj[static_cast<size_t>(i)]);
    return QuadraticFunction(g, std::move(M), std::move(v));
}

namespace {

Json rat_matrix_to_json(const RatMat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json instruction_to_json(const Instruction& ins) {
    Json j;
    if (const auto* g = std::get_if<Instruction::Gate>(&ins.body)) {
        const NormalizerGate& gate = g->gate;
        switch (gate.kind()) {
            case NormalizerGate::Kind::Qft: {
                j["op"] = "qft";
                j["registers"] = gate.registers();
                break;
            }
            case NormalizerGate::Kind::Automorphism:
                j["op"] = "automorphism";
                j["matrix"] = matrix_to_json(gate.automorphism_matrix().entries());
                break;
            case NormalizerGate::Kind::QuadraticPhase: {
                j["op"] = "quadratic";
                j["M"] = rat_matrix_to_json(gate.quadratic().M());
                Json v = Json::array();
                for (Eigen::Index i = 0; i < gate.quadratic().v().size(); ++i)
                    v.push_back(rat_to_string(gate.quadratic().v()(i)));
                j["v"] = std::move(v);
                break;
            }
            case NormalizerGate::Kind::Pauli: {
                j["op"] = "pauli";
                const PauliOperator& p = gate.pauli_op();
                j["a"] = int_to_string(p.a.exponent());
                j["z"] = element_to_json(p.z);
                j["x"] = element_to_json(p.x);
                break;
            }
        }
    } else if (const auto* mp = std::get_if<Instruction::MeasurePauli>(&ins.body)) {
        j["op"] = "measure_pauli";
        j["pauli"] = pauli_to_json(mp->op);
        j["store"] = mp->store;
    } else if (const auto* mr = std::get_if<Instruction::MeasureRegister>(&ins.body)) {
        j["op"] = "measure_register";
        j["register"] = mr->reg;
        j["store"] = mr->store;
    } else if (const auto* cc = std::get_if<Instruction::CosetCorrect>(&ins.body)) {
        j["op"] = "coset_correct";
        j["target"] = element_to_json(cc->target);
        j["omega"] = hom_to_json(cc->omega);
        if (cc->outcome_keys.size() == 1)
            j["outcome"] = cc->outcome_keys.front();
        else
            j["outcome"] = cc->outcome_keys;
    }
    return j;
}

Instruction instruction_from_json(const Json& j, const Group& g) {
    const std::string op = field(j, "op").get<std::string>();
    if (op == "qft") {
        const Json& regs = field(j, "registers");
        if (!regs.is_array()) throw ParseError("qft: expected a register array");
        std::vector<Eigen::Index> r;
        for (const Json& x : regs) {
            if (!x.is_number_integer()) throw ParseError("qft: register indices must be integers");
            r.push_back(x.get<Eigen::Index>());
        }
        return {Instruction::Gate{NormalizerGate::qft(g, std::move(r))}};
    }
    if (op == "automorphism") {
        const Json& mj = field(j, "matrix");
        HomMatrix h = mj.is_object()
                          ? hom_from_json(mj)
                          : HomMatrix(g, g, entries_from_json(mj, g.factor_count(),
                                                              g.factor_count()));
        return {Instruction::Gate{NormalizerGate::automorphism(std::move(h))}};
    }
    if (op == "quadratic")
        return {Instruction::Gate{NormalizerGate::quadratic_phase(
            quadratic_from_json(field(j, "M"), field(j, "v"), g))}};
    if (op == "pauli")
        return {Instruction::Gate{NormalizerGate::pauli(pauli_from_json(j, g))}};
    if (op == "measure_pauli")
        return {Instruction::MeasurePauli{pauli_from_json(field(j, "pauli"), g),
                                          field(j, "store").get<std::string>()}};
    if (op == "measure_register") {
        const Json& r = field(j, "register");
        if (!r.is_number_integer()) throw ParseError("measure_register: bad register index");
        return {Instruction::MeasureRegister{r.get<Eigen::Index>(),
                                             field(j, "store").get<std::string>()}};
    }
    if (op == "coset_correct") {
        Instruction::CosetCorrect cc{element_from_json(field(j, "target"), g),
                                     hom_from_json(field(j, "omega")),
                                     {}};
        const Json& out = field(j, "outcome");
        if (out.is_string())
            cc.outcome_keys.push_back(out.get<std::string>());
        else if (out.is_array())
            for (const Json& k : out) cc.outcome_keys.push_back(k.get<std::string>());
        else
            throw ParseError("coset_correct: outcome must be a key or key array");
        return {std::move(cc)};
    }
    throw ParseError("unknown instruction op \"" + op + "\"");
}

}  // namespace

Json circuit_to_json(const Circuit& c) {
    Json j;
    j["group"] = group_to_json(c.group);
    j["input"] = element_to_json(c.input);
    Json ins = Json::array();
    for (const Instruction& i : c.instructions) ins.push_back(instruction_to_json(i));
    j["instructions"] = std::move(ins);
    if (!c.main_registers.empty()) j["main_registers"] = c.main_registers;
    return j;
}

Circuit circuit_from_json(const Json& j) {
    Circuit c;
    c.group = group_from_json(field(j, "group"));
    for (Eigen::Index i = 0; i < c.group.factor_count(); ++i)
        if (c.group.modulus(i) < 1)
            throw ParseError("circuit: register moduli must be positive");
    c.input = element_from_json(field(j, "input"), c.group);
    const Json& ins = field(j, "instructions");
    if (!ins.is_array()) throw ParseError("circuit: instructions must be an array");
    for (const Json& i : ins) c.instructions.push_back(instruction_from_json(i, c.group));
    if (j.contains("main_registers")) {
        for (const Json& r : j.at("main_registers")) {
            if (!r.is_number_integer()) throw ParseError("circuit: bad main register index");
            c.main_registers.push_back(r.get<Eigen::Index>());
        }
    }
    c.validate();
    return c;
}

Json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid file: ") + e.what());
    }
}

}  // namespace abstab::io

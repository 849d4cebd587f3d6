#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "abstab/io.hpp"

namespace {

using namespace abstab;
using io::Json;

constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitUnsolvable = 4;
constexpr int kExitInconsistent = 5;

unsigned worker_count(std::uint64_t shots) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("ABSTAB_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    if (shots < n) n = static_cast<unsigned>(shots);
    return n == 0 ? 1 : n;
}

std::string render_outcomes(const std::map<std::string, Int>& m) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : m) {
        if (!first) os << ' ';
        first = false;
        os << k << '=' << v.get_str();
    }
    return os.str();
}

double phase_approx(const Int& exponent, const Int& modulus, double* im) {
    const double angle = 2.0 * M_PI * Rat(exponent, modulus).get_d();
    *im = std::sin(angle);
    return std::cos(angle);
}

Json record_to_json(const MeasurementRecord& r) {
    Json j;
    j["key"] = r.key;
    j["value"] = r.value.get_str();
    j["eigenvalue_exp"] = r.eigenvalue_exp.exponent().get_str();
    j["probability"] = io::rat_to_string(r.probability);
    return j;
}

int cmd_simulate(const std::string& file, std::uint64_t shots, std::uint64_t seed,
                 bool probabilities, const std::string& format) {
    Circuit c = io::circuit_from_json(io::load_file(file));
    std::vector<Transcript> results(shots);
    const unsigned workers = worker_count(shots);
    std::vector<std::thread> pool;
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::uint64_t i; (i = next.fetch_add(1)) < shots;) {
                try {
                    results[i] = run(c, CounterRng::for_shot(seed, i));
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::map<std::string, std::uint64_t> counts;
    for (const Transcript& t : results) ++counts[render_outcomes(t.outcomes)];

    if (format == "json") {
        Json out;
        out["shots"] = Json::array();
        for (std::uint64_t i = 0; i < shots; ++i) {
            Json s;
            s["outcomes"] = Json::object();
            for (const auto& [k, v] : results[i].outcomes) s["outcomes"][k] = v.get_str();
            if (probabilities) {
                s["records"] = Json::array();
                for (const auto& r : results[i].records)
                    s["records"].push_back(record_to_json(r));
            }
            out["shots"].push_back(std::move(s));
        }
        out["counts"] = Json::object();
        for (const auto& [k, n] : counts) out["counts"][k] = n;
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    for (std::uint64_t i = 0; i < shots; ++i) {
        std::cout << "shot " << i << ": " << render_outcomes(results[i].outcomes) << '\n';
        if (probabilities)
            for (const auto& r : results[i].records)
                std::cout << "  " << r.key << " = " << r.value.get_str()
                          << "  (eigenvalue exponent " << r.eigenvalue_exp.exponent().get_str()
                          << ", probability " << io::rat_to_string(r.probability) << ")\n";
    }
    std::cout << "counts:\n";
    for (const auto& [k, n] : counts)
        std::cout << "  " << (k.empty() ? "(none)" : k) << " : " << n << '\n';
    std::cout << "total shots: " << shots << '\n';
    return 0;
}

// Completes a main-register point to a full group element, filling ancilla
// registers from their recorded measurement outcomes.
GroupElement complete_point(const Circuit& c, const Transcript& t, const IntVec& point) {
    const Group& g = c.group;
    if (c.main_registers.empty()) {
        if (point.size() != g.factor_count())
            throw std::invalid_argument("amplitude: residue count mismatch");
        return GroupElement(g, point);
    }
    if (point.size() != static_cast<Eigen::Index>(c.main_registers.size()))
        throw std::invalid_argument("amplitude: one residue per main register expected");
    IntVec full = IntVec::Zero(g.factor_count());
    std::vector<bool> set(static_cast<size_t>(g.factor_count()), false);
    for (size_t i = 0; i < c.main_registers.size(); ++i) {
        full(c.main_registers[i]) = point(static_cast<Eigen::Index>(i));
        set[static_cast<size_t>(c.main_registers[i])] = true;
    }
    for (const Instruction& ins : c.instructions)
        if (const auto* mr = std::get_if<Instruction::MeasureRegister>(&ins.body))
            if (!set[static_cast<size_t>(mr->reg)]) {
                full(mr->reg) = t.outcomes.at(mr->store);
                set[static_cast<size_t>(mr->reg)] = true;
            }
    for (bool s : set)
        if (!s) throw std::invalid_argument("amplitude: unmeasured ancilla register");
    return GroupElement(g, std::move(full));
}

IntVec parse_point(const std::string& s) {
    std::vector<Int> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        vals.emplace_back(tok);
    IntVec v(static_cast<Eigen::Index>(vals.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = vals[static_cast<size_t>(i)];
    return v;
}

int cmd_amplitude(const std::string& file, const std::string& point_str, std::uint64_t seed,
                  const std::string& format) {
    Circuit c = io::circuit_from_json(io::load_file(file));
    Transcript t = run(c, CounterRng::for_shot(seed, 0));
    GroupElement x = complete_point(c, t, parse_point(point_str));
    auto amp = t.final_stabilizer.amplitude(x);

    Json out;
    if (!amp) {
        out["amplitude"] = "0";
    } else {
        const auto& [phase, h] = *amp;
        out["exponent"] = phase.exponent().get_str();
        out["exponent_modulus"] = phase.modulus().get_str();
        out["support_size"] = h.get_str();
        double im = 0.0;
        double re = phase_approx(phase.exponent(), phase.modulus(), &im);
        const double mag = 1.0 / std::sqrt(h.get_d());
        out["approx"] = {re * mag, im * mag};
    }
    if (format == "json") {
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    if (!amp) {
        std::cout << "amplitude: 0\n";
        return 0;
    }
    std::cout << "amplitude: gamma^" << out["exponent"].get<std::string>() << " / sqrt("
              << out["support_size"].get<std::string>() << ")  [gamma = exp(i*pi*2/"
              << out["exponent_modulus"].get<std::string>() << ")]\n";
    std::cout << "approx: " << out["approx"][0].get<double>() << " + "
              << out["approx"][1].get<double>() << "i\n";
    return 0;
}

std::string pauli_to_text(const PauliOperator& p) {
    std::ostringstream os;
    os << "gamma^" << p.a.exponent().get_str() << " Z(";
    for (Eigen::Index i = 0; i < p.z.residues().size(); ++i)
        os << (i ? "," : "") << p.z.residue(i).get_str();
    os << ") X(";
    for (Eigen::Index i = 0; i < p.x.residues().size(); ++i)
        os << (i ? "," : "") << p.x.residue(i).get_str();
    os << ")";
    return os.str();
}

int cmd_trace(const std::string& file, std::uint64_t seed, const std::string& format) {
    Circuit c = io::circuit_from_json(io::load_file(file));
    EngineState state = initialize(c.group, c.input, CounterRng::for_shot(seed, 0));
    Json steps = Json::array();
    auto snapshot = [&](const std::string& what) {
        const StabilizerGroup& s = state.stabilizer;
        Json j;
        j["step"] = what;
        Json gens = Json::array();
        for (const PauliOperator& p : s.generators()) gens.push_back(pauli_to_text(p));
        j["generators"] = std::move(gens);
        j["size"] = s.size().get_str();
        j["H_order"] = subgroup_order(s.label_groups().h).get_str();
        j["D_order"] = subgroup_order(s.label_groups().d).get_str();
        j["dim"] = s.structure().dimension.get_str();
        steps.push_back(std::move(j));
    };
    snapshot("input");
    int n = 0;
    for (const Instruction& ins : c.instructions) {
        step(state, ins);
        std::string what = "instruction " + std::to_string(n++);
        if (std::holds_alternative<Instruction::Gate>(ins.body)) what += " (gate)";
        else if (std::holds_alternative<Instruction::MeasurePauli>(ins.body)) what += " (measure_pauli)";
        else if (std::holds_alternative<Instruction::MeasureRegister>(ins.body)) what += " (measure_register)";
        else what += " (coset_correct)";
        snapshot(what);
    }
    if (format == "json") {
        Json out;
        out["trace"] = std::move(steps);
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    for (const Json& j : steps) {
        std::cout << j["step"].get<std::string>() << ": |S|=" << j["size"].get<std::string>()
                  << " |H|=" << j["H_order"].get<std::string>()
                  << " |D|=" << j["D_order"].get<std::string>()
                  << " dim=" << j["dim"].get<std::string>() << '\n';
        for (const Json& gen : j["generators"])
            std::cout << "  " << gen.get<std::string>() << '\n';
    }
    return 0;
}

int cmd_solve(const std::string& file, const std::string& format) {
    Json j = io::load_file(file);
    Group dom = io::group_from_json(j.contains("domain") ? j.at("domain") : Json::array());
    Group cod = io::group_from_json(j.contains("codomain") ? j.at("codomain") : Json::array());
    IntMat A = io::matrix_from_json(j.at("matrix"));
    if (A.rows() != cod.factor_count() || A.cols() != dom.factor_count())
        throw io::ParseError("solve: matrix shape does not match the groups");
    GroupElement b = io::element_from_json(j.at("b"), cod);

    auto sol = solve_system(dom, cod, A, b);
    Json out;
    out["solvable"] = sol.has_value();
    if (sol) {
        out["x0"] = io::element_to_json(sol->x0);
        out["kernel_gens"] = Json::array();
        for (const GroupElement& g : sol->kernel_gens)
            out["kernel_gens"].push_back(io::element_to_json(g));
        if (dom.finite()) {
            out["kernel_orders"] = Json::array();
            for (const Int& o : sol->kernel_structure)
                out["kernel_orders"].push_back(o.get_str());
            out["count"] = count_solutions(dom, cod, A, b).get_str();
        }
    }
    if (format == "json") {
        std::cout << out.dump(2) << '\n';
    } else if (!sol) {
        std::cout << "unsolvable\n";
    } else {
        std::cout << "x0: " << out["x0"].dump() << '\n';
        std::cout << "kernel generators: " << out["kernel_gens"].dump() << '\n';
        if (out.contains("count"))
            std::cout << "solution count: " << out["count"].get<std::string>() << '\n';
    }
    return sol ? 0 : kExitUnsolvable;
}

int cmd_snf(const std::string& file, const std::string& format) {
    Json j = io::load_file(file);
    IntMat A = io::matrix_from_json(j.is_object() ? j.at("matrix") : j);
    SnfDecomposition d = smith_normal_form(A);
    Json out;
    out["U"] = io::matrix_to_json(d.U);
    out["S"] = io::matrix_to_json(d.S);
    out["V"] = io::matrix_to_json(d.V);
    if (format == "json") {
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "U: " << out["U"].dump() << '\n'
                  << "S: " << out["S"].dump() << '\n'
                  << "V: " << out["V"].dump() << '\n';
    }
    return 0;
}

int cmd_coset(const std::string& file, const std::string& output) {
    Json j = io::load_file(file);
    Group g = io::group_from_json(j.at("group"));
    SubgroupGens h{g, {}};
    for (const Json& e : j.at("generators")) h.generators.push_back(io::element_from_json(e, g));
    GroupElement x = io::element_from_json(j.at("x"), g);
    Circuit c = prepare_coset_state(h, x);
    Json out = io::circuit_to_json(c);
    if (output.empty() || output == "-") {
        std::cout << out.dump(2) << '\n';
    } else {
        std::ofstream f(output);
        if (!f) throw io::ParseError("cannot write file: " + output);
        f << out.dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact stabilizer simulator for normalizer circuits over finite abelian groups"};
    app.require_subcommand(1);

    std::string file, point, format = "human", output;
    std::uint64_t shots = 1, seed = 0;
    bool probabilities = false;

    auto* sim = app.add_subcommand("simulate", "Run a circuit file for a number of shots");
    sim->add_option("circuit", file, "circuit file")->required();
    sim->add_option("--shots", shots, "number of shots");
    sim->add_option("--seed", seed, "base seed");
    sim->add_option("--format", format, "human or json");
    sim->add_flag("--probabilities", probabilities, "emit exact branch probabilities");

    auto* amp = app.add_subcommand("amplitude", "Amplitude of a basis element in the final state");
    amp->add_option("circuit", file, "circuit file")->required();
    amp->add_option("point", point, "comma-separated residues")->required();
    amp->add_option("--seed", seed, "base seed");
    amp->add_option("--format", format, "human or json");

    auto* tr = app.add_subcommand("stabilizer-trace", "Per-step stabilizer generators and label groups");
    tr->add_option("circuit", file, "circuit file")->required();
    tr->add_option("--seed", seed, "base seed");
    tr->add_option("--format", format, "human or json");

    auto* so = app.add_subcommand("solve", "Solve a linear system over groups");
    so->add_option("system", file, "system file")->required();
    so->add_option("--format", format, "human or json");

    auto* sn = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    sn->add_option("matrix", file, "matrix file")->required();
    sn->add_option("--format", format, "human or json");

    auto* co = app.add_subcommand("coset", "Emit a coset-state preparation circuit");
    co->add_option("spec", file, "coset description file")->required();
    co->add_option("--output", output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (sim->parsed()) return cmd_simulate(file, shots, seed, probabilities, format);
        if (amp->parsed()) return cmd_amplitude(file, point, seed, format);
        if (tr->parsed()) return cmd_trace(file, seed, format);
        if (so->parsed()) return cmd_solve(file, format);
        if (sn->parsed()) return cmd_snf(file, format);
        if (co->parsed()) return cmd_coset(file, output);
    } catch (const io::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const CircuitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInconsistent;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return 0;
}

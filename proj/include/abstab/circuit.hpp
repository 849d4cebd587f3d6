#pragma once

#include <map>
#include <string>
#include <variant>

#include "abstab/stabilizer.hpp"

namespace abstab {

/// Raised when a circuit asks for something its own data cannot satisfy at
/// run time (an unsolvable adaptive correction).
struct CircuitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Instruction {
    struct Gate {
        NormalizerGate gate;
    };
    struct MeasurePauli {
        PauliOperator op;
        std::string store;
    };
    struct MeasureRegister {
        Eigen::Index reg = 0;
        std::string store;
    };
    /// Reads the stored outcome vector b, solves omega(g') = b and applies
    /// the shift X(target - g').
    struct CosetCorrect {
        GroupElement target;
        HomMatrix omega;
        std::vector<std::string> outcome_keys;  // one per codomain factor
    };

    std::variant<Gate, MeasurePauli, MeasureRegister, CosetCorrect> body;
};

struct Circuit {
    Group group;
    GroupElement input;
    std::vector<Instruction> instructions;
    /// Registers carrying the payload when the circuit uses ancilla factors;
    /// empty means all registers.
    std::vector<Eigen::Index> main_registers;

    /// Throws std::invalid_argument on any group mismatch, bad register
    /// index or duplicate store key.
    void validate() const;
};

/// One recorded measurement: the branch taken and its exact probability.
struct MeasurementRecord {
    std::string key;
    Int value;                // stored classical value
    PhaseExp eigenvalue_exp;  // lambda = gamma^exp
    Rat probability;
};

struct EngineState {
    StabilizerGroup stabilizer;
    std::map<std::string, Int> classical;
    CounterRng rng;
};

struct Transcript {
    std::map<std::string, Int> outcomes;
    std::vector<MeasurementRecord> records;
    StabilizerGroup final_stabilizer;
};

/// Stabilizer description of the basis state |input>.
EngineState initialize(const Group& g, const GroupElement& input, CounterRng rng);

void step(EngineState& state, const Instruction& ins,
          std::vector<MeasurementRecord>* records = nullptr);

Transcript run(const Circuit& c, CounterRng rng);

/// Circuit preparing the coset state |x + <H>| on the registers of H.group,
/// using one ancilla block; deterministic output on every shot.
Circuit prepare_coset_state(const SubgroupGens& H, const GroupElement& x);

}  // namespace abstab

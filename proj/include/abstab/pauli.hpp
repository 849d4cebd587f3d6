#pragma once

#include <vector>

#include "abstab/quadratic.hpp"

namespace abstab {

/// Label (a, g, h) of the generalized Pauli operator gamma^a Z(g) X(h);
/// the label determines the operator exactly.
struct PauliOperator {
    PhaseExp a;
    GroupElement z;
    GroupElement x;

    static PauliOperator identity(const Group& g);
    static PauliOperator z_op(const GroupElement& g);
    static PauliOperator x_op(const GroupElement& g);

    const Group& group() const { return z.group(); }
    bool is_identity() const { return a.exponent() == 0 && z.is_zero() && x.is_zero(); }

    bool operator==(const PauliOperator& o) const { return a == o.a && z == o.z && x == o.x; }
    bool operator!=(const PauliOperator& o) const { return !(*this == o); }
};

/// Label of the matrix product s t.
PauliOperator multiply(const PauliOperator& s, const PauliOperator& t);
/// Label of s^n by square-and-multiply; n is reduced mod 2|G|.
PauliOperator power(const PauliOperator& s, const Int& n);
/// s^dagger = s^{2|G|-1}.
PauliOperator adjoint(const PauliOperator& s);
/// True iff chi_{z_s}(x_t) = chi_{z_t}(x_s).
bool commute(const PauliOperator& s, const PauliOperator& t);
/// Least N >= 1 with s^N the phase-free identity label; divides 2|G|.
Int operator_order(const PauliOperator& s);

/// One normalizer gate: a partial QFT, an automorphism gate, a quadratic
/// phase gate, or a Pauli gate.
class NormalizerGate {
  public:
    enum class Kind { Qft, Automorphism, QuadraticPhase, Pauli };

    static NormalizerGate qft(const Group& g, std::vector<Eigen::Index> registers);
    static NormalizerGate automorphism(HomMatrix a);
    static NormalizerGate quadratic_phase(QuadraticFunction q);
    static NormalizerGate pauli(PauliOperator p);

    Kind kind() const { return kind_; }
    const Group& group() const { return group_; }
    const std::vector<Eigen::Index>& registers() const { return registers_; }
    const HomMatrix& automorphism_matrix() const { return auto_; }
    const HomMatrix& automorphism_inverse_dual() const { return auto_inv_dual_; }
    const QuadraticFunction& quadratic() const { return quad_; }
    const HomMatrix& beta() const { return beta_; }
    const PauliOperator& pauli_op() const { return pauli_; }

  private:
    NormalizerGate() = default;
    Kind kind_ = Kind::Qft;
    Group group_;
    std::vector<Eigen::Index> registers_;
    HomMatrix auto_, auto_inv_dual_;
    QuadraticFunction quad_;
    HomMatrix beta_;
    PauliOperator pauli_;
};

/// Label of U s U^dagger for a normalizer gate U.
PauliOperator conjugate(const NormalizerGate& gate, const PauliOperator& s);

}  // namespace abstab

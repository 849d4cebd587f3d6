#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "abstab/pauli.hpp"

namespace abstab::dense {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Row-major basis index of g (first factor most significant, matching the
/// tensor-product order of the gate matrices).
Eigen::Index index_of(const GroupElement& g);
GroupElement element_at(const Group& g, Eigen::Index idx);

std::complex<double> phase_value(const PhaseExp& p);
std::complex<double> character_value(const GroupElement& g, const GroupElement& h);

CVec basis_state(const GroupElement& g);
CMat pauli_matrix(const PauliOperator& s);
CMat gate_matrix(const NormalizerGate& gate);

/// Born probabilities for measuring s on psi: entry j is the probability of
/// eigenvalue gamma^{(2|G|/N) j}, N = operator order of s.
std::vector<double> born_distribution(const PauliOperator& s, const CVec& psi);

/// Normalized projection of psi onto the eigenspace with eigenvalue
/// gamma^{(2|G|/N) j}.
CVec project_eigenspace(const PauliOperator& s, long j, const CVec& psi);

/// Orthonormal projector onto the joint +1 eigenspace of the operators.
CMat joint_plus_one_projector(const Group& g, const std::vector<PauliOperator>& ops);

}  // namespace abstab::dense

#pragma once

#include <json.hpp>

#include "abstab/circuit.hpp"

namespace abstab::io {

using Json = nlohmann::ordered_json;

/// Malformed input data (as opposed to well-formed data describing an
/// invalid object, which surfaces the constructor's own exception).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Int int_from_json(const Json& j);
Rat rat_from_json(const Json& j);
std::string int_to_string(const Int& x);
std::string rat_to_string(const Rat& x);

Json group_to_json(const Group& g);
Group group_from_json(const Json& j);

Json element_to_json(const GroupElement& g);
GroupElement element_from_json(const Json& j, const Group& g);

Json matrix_to_json(const IntMat& m);  // nested rows of decimal strings
IntMat matrix_from_json(const Json& j);

Json hom_to_json(const HomMatrix& h);
HomMatrix hom_from_json(const Json& j);

Json pauli_to_json(const PauliOperator& p);
PauliOperator pauli_from_json(const Json& j, const Group& g);

QuadraticFunction quadratic_from_json(const Json& m, const Json& v, const Group& g);

Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

Json load_file(const std::string& path);

}  // namespace abstab::io

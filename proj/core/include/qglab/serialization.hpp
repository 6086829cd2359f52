#pragma once

#include <string>

#include "qglab/operator_system.hpp"
#include "qglab/rigidity.hpp"
#include "qglab/symmetry.hpp"

namespace qglab {

// Operator systems serialize as
//   {"n": int, "dim": int, "basis": [element, ...]}
// where each element is the row-major list of the n*n entries of the matrix,
// every entry a [re, im] pair.  The loader rejects anything that fails
// validate_operator_system (wrong first element, non-Hermitian or
// non-orthonormal entries, trace conditions).
std::string operator_system_to_json(const OperatorSystem& v);
OperatorSystem operator_system_from_json(const std::string& text);
void save_operator_system(const std::string& path, const OperatorSystem& v);
OperatorSystem load_operator_system(const std::string& path);

// Diagnostic reports serialize to JSON with all fields; non-finite numbers
// are encoded as the strings "inf" / "-inf" / "nan".
std::string to_json(const StabilizerAlgebra& s);
std::string to_json(const AutSearchReport& r);
std::string to_json(const DiagonalPhaseGroup& g);
std::string to_json(const RigidityCertificate& c);
std::string to_json(const ObstructionReport& r);

const char* to_string(AutVerdict v);
const char* to_string(RigidityVerdict v);
const char* to_string(ObstructionVerdict v);

}  // namespace qglab

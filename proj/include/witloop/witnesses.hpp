#ifndef WITLOOP_WITNESSES_HPP
#define WITLOOP_WITNESSES_HPP

#include "witloop/operator.hpp"
#include "witloop/random.hpp"

namespace witloop
{

// |phi+> = (|00> + |11>)/sqrt 2 as a density matrix.
HermitianOperator phi_plus_state();

// 1/2 - |phi+><phi+|, which already has unit trace.
HermitianOperator phi_plus_witness();

// (|0..0> + |1..1>)/sqrt 2 on n qubits.
HermitianOperator ghz_state(int qubits);

// (1/2 - |GHZ_n><GHZ_n|) / tr, normalized to unit trace.
HermitianOperator ghz_witness(int qubits);

HermitianOperator maximally_mixed(std::vector<int> dims);

// Projector |v><v| on the given subsystem dimensions.
HermitianOperator projector(std::vector<int> dims, const CVector& v);

// Partial transpose on the last subsystem of a bipartite operator.
CMatrix partial_transpose_second(const CMatrix& m, int dim_a, int dim_b);

// Decomposable two-qubit witness: partial transpose of a random pure
// state plus a random positive part, normalized to unit trace. Not
// guaranteed to have a negative eigenvalue.
HermitianOperator random_two_qubit_witness(Rng& rng);

}  // namespace witloop

#endif  // WITLOOP_WITNESSES_HPP

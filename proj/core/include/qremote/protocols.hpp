// Copyright 2026 The qremote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QREMOTE_PROTOCOLS_HPP
#define QREMOTE_PROTOCOLS_HPP

// Remote implementation of unitaries over LOCC plus shared entanglement,
// and numerical verifiers for the resource bounds and no-go arguments
// around it.

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qremote/analysis_bounds.hpp"
#include "qremote/locc_runtime.hpp"
#include "qremote/qops.hpp"

namespace qrc::protocols {

using bounds::BoundCheck;
using linalg::Complex;
using linalg::CMatrix;
using linalg::CVector;
using linalg::Label;
using locc::LoccRuntime;
using locc::ResourceLedger;
using ops::PauliIndex;
using ops::Rng;
using ops::UnitaryGate;

/// Branch-wise fidelities must reach 1 - kFidelityTolerance.
inline constexpr double kFidelityTolerance = 1e-9;
/// Control states must be orthonormal to this tolerance.
inline constexpr double kOrthogonalityTolerance = 1e-12;

struct ProtocolReport {
    std::string name;
    ResourceLedger ledger;
    double fidelity = 1.0;  // minimum over branches
    std::map<std::string, double> entropies;
    std::vector<BoundCheck> bound_checks;
    int branches = 0;

    bool all_passed() const { return bounds::all_passed(bound_checks); }
};

/// Finite set of unitaries addressed by orthonormal control states. The
/// control space is padded to a power of two; padded slots act as the
/// identity and cannot be selected.
class ControlEncoding {
   public:
    /// Control state k is the computational basis state |k>.
    explicit ControlEncoding(std::vector<UnitaryGate> unitaries);
    /// Explicit control states, one per unitary, each of dimension
    /// control_dim(). Throws ValidationError if they are not orthonormal.
    ControlEncoding(std::vector<UnitaryGate> unitaries, std::vector<CVector> control_states);

    /// {1, X, Y, Z} on two control qubits.
    static ControlEncoding paulis();

    std::size_t size() const { return unitaries_.size(); }
    std::size_t control_dim() const { return std::size_t{1} << control_qubits_; }
    std::size_t control_qubits() const { return control_qubits_; }
    const std::vector<UnitaryGate>& unitaries() const { return unitaries_; }
    const std::vector<CVector>& control_states() const { return control_states_; }
    /// Throws ValidationError when k selects a padded or nonexistent slot.
    const CVector& control_state(std::size_t k) const;

    /// sum_k |c_k><c_k| (x) U_k + (1 - sum_k |c_k><c_k|) (x) 1, control qubits
    /// most significant.
    UnitaryGate controlled_operation() const;

   private:
    std::vector<UnitaryGate> unitaries_;
    std::vector<CVector> control_states_;
    std::size_t control_qubits_ = 1;
};

/// Teleports the qubit `src` onto `dst`, where `dst` is one half of a fresh
/// Bell pair whose other half belongs to the owner of `src`. The sender
/// Bell-measures (src, partner), sends the 2-bit outcome mu, and the receiver
/// applies sigma^mu. Throws ProtocolError if no such pair exists.
void teleport_state(LoccRuntime& rt, const Label& src, const Label& dst);

/// Operation Alice applies to the teleported qubit: `gate` acts on
/// (controls..., alpha), all controls being Alice's qubits.
struct AliceOperation {
    UnitaryGate gate;
    std::vector<Label> controls;
};

/// Bidirectional state teleportation: the first fresh Bell pair carries
/// beta to Alice (its Alice half becomes alpha), Alice applies `op`, the
/// second fresh pair carries the result back, and Bob swaps it into `beta`.
///
/// The report's fidelity is the minimum over branches of
/// <e|rho|e>, where rho is the final state of every qubit outside the two
/// pairs and e is `op` applied directly (with beta in place of alpha) to
/// that subsystem's initial state.
ProtocolReport bidirectional_remote(LoccRuntime& rt, const AliceOperation& op, const Label& beta);

/// bidirectional_remote with an uncontrolled single-qubit U.
ProtocolReport bidirectional_u_teleport(LoccRuntime& rt, const UnitaryGate& u, const Label& beta);

/// Default labels used by the self-contained setups below.
struct BidirectionalLabels {
    Label beta = "beta";
    Label alpha = "alpha";
    Label bob_outbound = "bob_g1";
    Label alice_inbound = "alice_g2";
    Label bob_inbound = "bob_g2";
};

/// Adds beta = psi at Bob and distributes the two Bell pairs.
BidirectionalLabels prepare_bidirectional(LoccRuntime& rt, const CVector& psi);

/// Alice prepares the control in `control_amplitudes`, teleports it qubit by
/// qubit over the first control_qubits() fresh Bell pairs, and Bob applies
/// the controlled operation to (received control..., beta). Bob sends
/// nothing. Fidelity is measured on the received control, beta and every
/// qubit outside the pairs.
ProtocolReport control_state_teleport(LoccRuntime& rt, const ControlEncoding& enc,
                                      const CVector& control_amplitudes, const Label& beta);

/// Selects control state k.
ProtocolReport control_state_teleport(LoccRuntime& rt, const ControlEncoding& enc, std::size_t k,
                                      const Label& beta);

struct DenseCodingResult {
    int decoded = -1;                   // common outcome, or -1 if branches disagree
    double correct_probability = 0.0;   // total probability of decoding mu
    int branches = 0;
    ProtocolReport report;
};

/// Bob holds (beta, beta_prime) in |B^0>; sigma^mu is teleported onto beta
/// bidirectionally and Bob Bell-measures (beta, beta_prime).
DenseCodingResult dense_coding_bound_demo(LoccRuntime& rt, PauliIndex mu, const Label& beta,
                                          const Label& beta_prime);

/// Self-contained version on a fresh enumerating runtime.
DenseCodingResult dense_coding_bound_demo(PauliIndex mu);

struct BranchEntropy {
    double probability = 0.0;
    double entanglement = 0.0;              // S(rho_{B beta beta'})
    std::array<double, 4> ancilla_entropy{};  // S(rho_B^{i mu})
    std::array<double, 4> weight{};           // probability of |mu>_R within the branch
    double decomposition = 0.0;             // 2 + (1/4) sum_mu ancilla_entropy[mu]
};

struct EntanglementBoundResult {
    std::vector<BranchEntropy> per_branch;
    double min_entanglement = 0.0;
    double max_identity_deviation = 0.0;  // max |E - decomposition|
    ProtocolReport report;
};

struct EntanglementBoundOptions {
    /// Extra Bell pairs shared but left idle; each adds one ebit of A/B
    /// entanglement to the ancilla state.
    int idle_pairs = 0;
};

/// Alice holds R (x) C in (1/2) sum_mu |mu>_R |sigma^mu>_C, Bob holds
/// (beta, beta') in |B^0>, and sigma^mu is applied coherently through the
/// bidirectional scheme controlled on C. For every branch it computes the
/// entanglement E of Bob's side and the decomposition through the ancilla
/// entropies.
EntanglementBoundResult entanglement_bound_demo(const EntanglementBoundOptions& options = {});

struct AncillaIndependence {
    double max_deviation = 0.0;  // max 1 - |<a|a'>|^2 over configuration pairs, per branch
    double max_factor_residual = 0.0;
    int configurations = 0;
    int branches_per_configuration = 0;
};

/// Runs the bidirectional scheme for every (U, psi) and compares, branch by
/// branch, the final state of all qubits other than beta.
AncillaIndependence ancilla_independence_check(const std::vector<UnitaryGate>& u_set,
                                               const std::vector<CVector>& psi_set);

struct NoGoResult {
    double deficit = 0.0;
    Complex input_overlap;   // <(U' chi) psi' | (U chi) psi>
    Complex output_overlap;  // <Phi gamma | Phi gamma'> = <U' psi' | U psi>
    UnitaryGate u_prime;
};

/// With G1 trivial, the inputs to G2 for (U, psi) and (U', psi') are
/// orthogonal while the required outputs coincide. U' is built as
/// U (|psi><psi'| + |psi'><psi|) so that U' psi' = U psi. `chi` is the
/// ancilla state with alpha as its most significant qubit. Throws
/// PreconditionError unless psi and psi' are normalized and orthogonal.
NoGoResult trivial_g1_nogo_check(const CVector& chi, const CVector& psi, const CVector& psi_prime,
                                 const UnitaryGate& u);

struct StateTransfer {
    double purity_alpha = 0.0;       // minimum over branches
    double transfer_fidelity = 0.0;  // minimum over branches
    int branches = 0;
};

/// Runs only the first stage of the bidirectional scheme and inspects alpha.
StateTransfer g1_state_transfer_check(const CVector& psi);

struct OrthogonalityWitness {
    double range = 0.0;           // max |z_j - z_k| over samples z = <psi|U'^dagger U|psi>
    double modulus_spread = 0.0;  // max |z| - min |z|
    double phase_spread = 0.0;    // max |arg(z_j / z_0)|
    bool proportional = false;    // |Tr(U'^dagger U)| == 2 within 1e-9
};

OrthogonalityWitness control_orthogonality_witness(const UnitaryGate& u, const UnitaryGate& u_prime,
                                                   int n_samples, Rng& rng);

}  // namespace qrc::protocols

#endif  // QREMOTE_PROTOCOLS_HPP

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsm/arith.hpp"
#include "qsm/dp.hpp"
#include "qsm/rng.hpp"
#include "qsm/statevec.hpp"

namespace qsm {

enum class Backend { statevector, tableau, analytic };

std::string backend_name(Backend b);
Backend backend_from_name(const std::string& name); // config_error on unknown name

struct ProtocolConfig {
    std::int64_t n = 2;      // client count
    std::int64_t kappa = 2;  // randomized-response alphabet size
    std::int64_t d = 0;      // prime qudit dimension, d > (kappa-1) n
    RandomizerConfig randomizer;
    Backend backend = Backend::statevector;
    std::uint64_t seed = 0;

    // config_error / unsupported_error on violation.
    void validate() const;
};

struct TeleportCorrection {
    std::int64_t ell = 0; // H-basis measurement of the GHZ share
    std::int64_t s = 0;   // Z-basis measurement of the server Bell half

    bool operator==(const TeleportCorrection&) const = default;
};

// Classical traffic on the simulated channels. Corrections flow
// server -> client, measurement reports client -> server.
struct ClassicalMessage {
    enum class Kind { teleport_correction, measurement_report };

    Kind kind;
    std::string sender;
    std::string receiver;
    std::int64_t ell = 0, s = 0; // teleport_correction payload
    std::int64_t z = 0;          // measurement_report payload

    bool operator==(const ClassicalMessage&) const = default;
};

struct ClientRecord {
    std::int64_t x = 0; // raw input
    std::int64_t y = 0; // differentially private output
    std::optional<TeleportCorrection> correction; // statevector backend only
    std::int64_t z = 0; // measurement outcome reported to the server

    bool operator==(const ClientRecord&) const = default;
};

struct ProtocolTranscript {
    std::int64_t n = 0, kappa = 0, d = 0;
    double gamma = 0.0;
    Backend backend = Backend::statevector;
    std::uint64_t seed = 0;
    std::vector<ClientRecord> clients;
    std::vector<ClassicalMessage> messages;
    std::int64_t z = 0;      // decoded sum, z = -sum z_i mod d
    double estimate = 0.0;   // de-biased estimate of the true sum

    bool operator==(const ProtocolTranscript&) const = default;

    std::string to_json() const;                   // single-line document
    static ProtocolTranscript from_json(const std::string& text);
};

// (1/sqrt d) sum_j |jj>, built as H on qudit 0 then CX(0 -> 1).
StateVector prepare_bell(std::int64_t d);

// (1/sqrt d) sum_j |j>^(x)n, built as H on qudit 0 then CX fanned out.
StateVector prepare_ghz(std::int64_t n, std::int64_t d);

// Teleport GHZ share `share_index` of `joint` through `bell_pair`. Performs
// CX^-1 (share controls the server Bell half), H on the share, measures both,
// applies the client correction X^{-s} then Z^{-ell}, and re-slots the client
// qudit where the share was. `joint` keeps its qudit count.
TeleportCorrection teleport_share(StateVector& joint, int share_index,
                                  const StateVector& bell_pair, Rng& rng);

// Same circuit with forced measurement outcomes; returns the branch
// probability. Used to enumerate all d^2 correction branches.
double teleport_share_forced(StateVector& joint, int share_index, const StateVector& bell_pair,
                             std::int64_t ell, std::int64_t s);

// One client's local round: Z^{y}, H, then a computational-basis
// measurement whose outcome the client reports.
std::int64_t client_local_ops(StateVector& state, int client_qudit, std::int64_t y, Rng& rng);

// Server decode m = -sum z_i mod d. Reports outside [0, d) raise a protocol error.
ModInt server_decode(const std::vector<std::int64_t>& reports, std::int64_t d);

// The dit-flip-channel randomizer of the quantum circuit: environment mixture
// controls a CX onto |x>, both registers measured. `y` is the randomized
// output (== the classical randomizer in law); `env_outcome` is the measured
// environment digit j (never >= kappa); `raw_outcome` is y' = x + j.
struct QuantumRandomizeResult {
    std::int64_t y;
    std::int64_t env_outcome;
    std::int64_t raw_outcome;
};
QuantumRandomizeResult quantum_randomize(std::int64_t x, std::int64_t kappa, std::int64_t d,
                                         double gamma, Rng& rng);

// Closed-form joint law of the outcome vector: z_1..z_{n-1} uniform,
// z_n = -m - sum_{i<n} z_i (mod d).
std::vector<std::int64_t> analytic_sample(std::int64_t m, std::int64_t n, std::int64_t d, Rng& rng);

// Distribution, phase encoding and measurement for fixed per-client phases
// y (already randomized): returns the per-client outcomes z. Statevector runs teleport every share explicitly;
// the tableau backend starts from the post-distribution GHZ tableau.
std::vector<std::int64_t> sample_outcomes(std::int64_t n, std::int64_t d,
                                          const std::vector<std::int64_t>& y, Backend backend,
                                          Rng& rng,
                                          std::vector<TeleportCorrection>* corrections = nullptr);

// Joint state right after the phases are applied, for state-level privacy checks.
StateVector state_after_phase_encoding(std::int64_t n, std::int64_t d,
                                       const std::vector<std::int64_t>& y, bool via_teleport,
                                       Rng& rng);

// Full run of the protocol: randomize inputs, distribute, measure, decode,
// de-bias. The transcript records config, per-client tuples, every classical
// message in order, and the decode.
ProtocolTranscript run_protocol(const ProtocolConfig& config, const std::vector<std::int64_t>& inputs);

} // namespace qsm

#include "qsm/protocol.hpp"

#include <stdexcept>
#include <string>

#include "qsm/errors.hpp"
#include "qsm/tableau.hpp"

namespace qsm {

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::statevector: return "statevector";
        case Backend::tableau: return "tableau";
        case Backend::analytic: return "analytic";
    }
    throw std::logic_error("backend_name: unknown backend");
}

Backend backend_from_name(const std::string& name) {
    if (name == "statevector") return Backend::statevector;
    if (name == "tableau") return Backend::tableau;
    if (name == "analytic") return Backend::analytic;
    throw config_error("unknown backend '" + name + "' (statevector|tableau|analytic)");
}

void ProtocolConfig::validate() const {
    if (n < 2) throw config_error("protocol needs at least 2 clients");
    if (kappa < 2) throw config_error("kappa must be >= 2");
    if (randomizer.kappa != kappa) throw config_error("randomizer kappa does not match config");
    if (!(randomizer.gamma >= 0.0 && randomizer.gamma <= 1.0))
        throw config_error("gamma must lie in [0, 1]");
    if (!is_prime(d)) throw config_error("d = " + std::to_string(d) + " is not prime");
    if (backend == Backend::tableau && d == 2)
        throw unsupported_error("tableau backend supports odd prime d only");
    if (d <= (kappa - 1) * n)
        throw config_error("d must exceed (kappa-1)n = " + std::to_string((kappa - 1) * n));
    if (backend == Backend::statevector) {
        // Peak state is the joint state plus one Bell pair: d^(n+2) amplitudes.
        std::int64_t size = 1;
        for (std::int64_t i = 0; i < n + 2; ++i) {
            if (size > StateVector::kDefaultAmpCap / d)
                throw config_error("statevector backend needs d^(n+2) amplitudes under the cap; "
                                   "use the tableau or analytic backend");
            size *= d;
        }
    }
}

StateVector prepare_bell(std::int64_t d) {
    StateVector psi(2, d);
    psi.apply_h(0);
    psi.apply_cx(0, 1);
    return psi;
}

StateVector prepare_ghz(std::int64_t n, std::int64_t d) {
    if (n < 1) throw std::domain_error("prepare_ghz: need at least one qudit");
    StateVector psi(static_cast<int>(n), d);
    psi.apply_h(0);
    for (int i = 1; i < n; ++i) psi.apply_cx(0, i);
    return psi;
}

namespace {

// The teleport channel requires the standard Bell resource (1/sqrt d) sum |jj>.
void check_bell_pair(const StateVector& joint, const StateVector& bell_pair) {
    const std::int64_t d = joint.qudit_dim();
    if (bell_pair.num_qudits() != 2 || bell_pair.qudit_dim() != d)
        throw std::domain_error("teleport_share: bell pair must be 2 qudits of matching dimension");
    const double diag = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::int64_t j = 0; j < d; ++j)
        for (std::int64_t k = 0; k < d; ++k) {
            const cdouble want = j == k ? cdouble{diag, 0.0} : cdouble{};
            if (std::abs(bell_pair.amplitude(j * d + k) - want) > 1e-9)
                throw std::domain_error("teleport_share: resource is not the generalized Bell state");
        }
}

// Shared circuit of teleport_share / teleport_share_forced. After the two
// measurements the measured qudits are dropped and the client qudit is moved
// into the share's slot.
void teleport_finish(StateVector& joint, int share, std::int64_t ell, std::int64_t s) {
    const int n = joint.num_qudits();   // includes the appended pair
    const int server_half = n - 2;
    const int client_half = n - 1;

    joint.apply_x_pow(client_half, -s);
    joint.apply_z_pow(client_half, -ell);
    joint.drop_qudit(server_half, s);
    joint.drop_qudit(share, ell);

    // Order is now [0..share-1, share+1.., client]; put the client qudit back
    // in the share's slot.
    std::vector<int> source_of;
    source_of.reserve(n - 2);
    for (int q = 0; q < n - 2; ++q) source_of.push_back(q < share ? q : q - 1);
    source_of[share] = n - 3;
    joint.permute_qudits(source_of);
}

} // namespace

TeleportCorrection teleport_share(StateVector& joint, int share_index,
                                  const StateVector& bell_pair, Rng& rng) {
    check_bell_pair(joint, bell_pair);
    const std::int64_t d = joint.qudit_dim();
    const int n = joint.num_qudits();
    if (share_index < 0 || share_index >= n)
        throw std::domain_error("teleport_share: share index out of range");

    // The server Bell half is measured before the H on the share (the two
    // commute), and the measured-out Bell qudits are never stored: after
    // CX^-1 the amplitude at (G, S = j - G_share, C = j) is psi_G / sqrt d,
    // so the branch mass of S = s is sum_G |psi_G|^2 / d and collapsing onto
    // it leaves the (n+1)-qudit state chi[G, C = s + G_share] =
    // psi_G / sqrt(d p(s)). Keeps the peak array at d^(n+1).
    const std::vector<cdouble>& amp = joint.amplitudes();
    double total = 0.0;
    for (const cdouble& v : amp) total += std::norm(v);
    if (std::abs(total - 1.0) > 1e-6)
        throw std::runtime_error("teleport_share: state norm violation");

    const double branch = total / static_cast<double>(d);
    const double u = rng.uniform01() * total;
    std::int64_t s = d - 1;
    double cum = 0.0;
    for (std::int64_t k = 0; k < d; ++k) {
        cum += branch;
        if (u < cum) {
            s = k;
            break;
        }
    }

    std::vector<cdouble> chi(amp.size() * d, cdouble{});
    const double rescale = 1.0 / std::sqrt(static_cast<double>(d) * branch);
    for (std::int64_t idx = 0; idx < joint.size(); ++idx) {
        const cdouble v = amp[idx];
        if (v == cdouble{}) continue;
        const std::int64_t c = (s + joint.digit_at(idx, share_index)) % d;
        chi[idx * d + c] = v * rescale;
    }
    StateVector work = StateVector::from_amplitudes(n + 1, d, std::move(chi));

    work.apply_h(share_index);
    const std::int64_t ell = work.measure_z(share_index, rng);
    work.drop_qudit(share_index, ell);

    // Client correction X^{-s} then Z^{-ell}, then re-slot the client qudit
    // where the share was.
    work.apply_x_pow(n - 1, -s);
    work.apply_z_pow(n - 1, -ell);
    std::vector<int> source_of(n);
    for (int q = 0; q < n; ++q) source_of[q] = q < share_index ? q : q - 1;
    source_of[share_index] = n - 1;
    work.permute_qudits(source_of);

    joint = std::move(work);
    return {ell, s};
}

double teleport_share_forced(StateVector& joint, int share_index, const StateVector& bell_pair,
                             std::int64_t ell, std::int64_t s) {
    check_bell_pair(joint, bell_pair);
    StateVector work = joint.tensor(bell_pair);
    const int server_half = work.num_qudits() - 2;
    work.apply_cx(share_index, server_half, /*inverse=*/true);
    work.apply_h(share_index);
    const double p_ell = work.project_z(share_index, ell);
    const double p_s = work.project_z(server_half, s);
    teleport_finish(work, share_index, ell, s);
    joint = std::move(work);
    return p_ell * p_s;
}

std::int64_t client_local_ops(StateVector& state, int client_qudit, std::int64_t y, Rng& rng) {
    state.apply_z_pow(client_qudit, y);
    state.apply_h(client_qudit);
    return state.measure_z(client_qudit, rng);
}

ModInt server_decode(const std::vector<std::int64_t>& reports, std::int64_t d) {
    std::int64_t sum = 0;
    for (std::int64_t z : reports) {
        if (z < 0 || z >= d)
            throw std::domain_error("server_decode: report out of range");
        sum = (sum + z) % d;
    }
    return reduce_exponent(-sum, d);
}

QuantumRandomizeResult quantum_randomize(std::int64_t x, std::int64_t kappa, std::int64_t d,
                                         double gamma, Rng& rng) {
    if (kappa < 2) throw std::domain_error("quantum_randomize: kappa must be >= 2");
    if (x < 0 || x >= kappa) throw std::domain_error("quantum_randomize: input out of range");
    if (d <= 2 * (kappa - 1))
        throw std::domain_error("quantum_randomize: needs d > 2(kappa-1) so x + j stays below d");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::domain_error("quantum_randomize: gamma must lie in [0, 1]");

    // Sample the environment branch of the dit-flip mixture
    //   rho_e = p |0><0| + ((1-p)/(kappa-1)) sum_{j=1}^{kappa-1} |j><j|,
    // p = 1 - (kappa-1) gamma / kappa, then run the branch exactly.
    const double p = 1.0 - static_cast<double>(kappa - 1) * gamma / static_cast<double>(kappa);
    std::int64_t env = 0;
    if (!rng.bernoulli(p))
        env = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(kappa - 1)));

    StateVector state = StateVector::basis_state(2, d, {x, env});
    state.apply_cx(/*control=*/1, /*target=*/0);
    const std::int64_t raw = state.measure_z(0, rng);      // y' = x + j, below d
    const std::int64_t env_out = state.measure_z(1, rng);  // j
    return {raw % kappa, env_out, raw};
}

std::vector<std::int64_t> analytic_sample(std::int64_t m, std::int64_t n, std::int64_t d, Rng& rng) {
    std::vector<std::int64_t> z(n);
    std::int64_t sum = 0;
    for (std::int64_t i = 0; i + 1 < n; ++i) {
        z[i] = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d)));
        sum = (sum + z[i]) % d;
    }
    z[n - 1] = mod_reduce(-m - sum, d);
    return z;
}

std::vector<std::int64_t> sample_outcomes(std::int64_t n, std::int64_t d,
                                          const std::vector<std::int64_t>& y, Backend backend,
                                          Rng& rng, std::vector<TeleportCorrection>* corrections) {
    if (static_cast<std::int64_t>(y.size()) != n)
        throw std::domain_error("sample_outcomes: need one y per client");

    std::vector<std::int64_t> z(n);
    switch (backend) {
        case Backend::statevector: {
            StateVector state = prepare_ghz(n, d);
            const StateVector bell = prepare_bell(d);
            for (int i = 0; i < n; ++i) {
                const TeleportCorrection c = teleport_share(state, i, bell, rng);
                if (corrections) corrections->push_back(c);
            }
            for (int i = 0; i < n; ++i) z[i] = client_local_ops(state, i, y[i], rng);
            break;
        }
        case Backend::tableau: {
            // Teleportation is an identity on the state; start from the
            // distributed GHZ tableau.
            StabilizerTableau t = StabilizerTableau::ghz(static_cast<int>(n), d);
            for (int i = 0; i < n; ++i) t.apply_z_pow(i, y[i]);
            for (int i = 0; i < n; ++i) t.apply_h(i);
            for (int i = 0; i < n; ++i) z[i] = t.measure_z(i, rng);
            break;
        }
        case Backend::analytic: {
            std::int64_t m = 0;
            for (std::int64_t yi : y) m = mod_reduce(m + yi, d);
            z = analytic_sample(m, n, d, rng);
            break;
        }
    }
    return z;
}

StateVector state_after_phase_encoding(std::int64_t n, std::int64_t d,
                                       const std::vector<std::int64_t>& y, bool via_teleport,
                                       Rng& rng) {
    if (static_cast<std::int64_t>(y.size()) != n)
        throw std::domain_error("state_after_phase_encoding: need one y per client");
    StateVector state = prepare_ghz(n, d);
    if (via_teleport) {
        const StateVector bell = prepare_bell(d);
        for (int i = 0; i < n; ++i) teleport_share(state, i, bell, rng);
    }
    for (int i = 0; i < n; ++i) state.apply_z_pow(i, y[i]);
    return state;
}

namespace {

std::string client_name(std::int64_t i) { return "client_" + std::to_string(i + 1); }

} // namespace

ProtocolTranscript run_protocol(const ProtocolConfig& config, const std::vector<std::int64_t>& inputs) {
    config.validate();
    if (static_cast<std::int64_t>(inputs.size()) != config.n)
        throw std::domain_error("run_protocol: need one input per client");
    for (std::int64_t x : inputs)
        if (x < 0 || x >= config.kappa) throw std::domain_error("run_protocol: input out of range");

    Rng rng(config.seed);
    ProtocolTranscript t;
    t.n = config.n;
    t.kappa = config.kappa;
    t.d = config.d;
    t.gamma = config.randomizer.gamma;
    t.backend = config.backend;
    t.seed = config.seed;
    t.clients.resize(config.n);

    // Local randomized response.
    std::vector<std::int64_t> y(config.n);
    for (std::int64_t i = 0; i < config.n; ++i) {
        y[i] = randomize(inputs[i], config.randomizer, rng);
        t.clients[i].x = inputs[i];
        t.clients[i].y = y[i];
    }

    // Entanglement distribution, phase encoding, measurement.
    std::vector<TeleportCorrection> corrections;
    const std::vector<std::int64_t> z =
        sample_outcomes(config.n, config.d, y, config.backend, rng,
                        config.backend == Backend::statevector ? &corrections : nullptr);

    for (std::int64_t i = 0; i < config.n; ++i) {
        if (config.backend == Backend::statevector) {
            t.clients[i].correction = corrections[i];
            ClassicalMessage msg;
            msg.kind = ClassicalMessage::Kind::teleport_correction;
            msg.sender = "server";
            msg.receiver = client_name(i);
            msg.ell = corrections[i].ell;
            msg.s = corrections[i].s;
            t.messages.push_back(std::move(msg));
        }
        t.clients[i].z = z[i];
    }

    // Measurement reports, in client order.
    for (std::int64_t i = 0; i < config.n; ++i) {
        ClassicalMessage msg;
        msg.kind = ClassicalMessage::Kind::measurement_report;
        msg.sender = client_name(i);
        msg.receiver = "server";
        msg.z = z[i];
        t.messages.push_back(std::move(msg));
    }

    // Server decode and de-bias.
    t.z = server_decode(z, config.d).value();
    t.estimate = debias(t.z, config.n, config.kappa, config.randomizer.gamma);
    return t;
}

} // namespace qsm

#include "qsm/verify.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>
#include <thread>

#include "qsm/arith.hpp"
#include "qsm/dp.hpp"
#include "qsm/errors.hpp"
#include "qsm/experiment.hpp"
#include "qsm/protocol.hpp"
#include "qsm/stats.hpp"
#include "qsm/surface_code.hpp"
#include "qsm/tableau.hpp"

namespace qsm {

namespace {

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

int worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(hw == 0 ? 1 : std::min(hw, 8u));
}

// A1: exact decoding m = sum y_i for every valid (n, d) pair with kappa = 2,
// 1000 statevector trials per pair cycling through all 2^n input tuples.
CriterionResult a1_exact_decoding() {
    const auto start = clock_type::now();
    const std::vector<std::int64_t> ns{2, 3, 4};
    const std::vector<std::int64_t> ds{3, 5, 7, 11};
    constexpr std::int64_t kTrials = 1000;

    struct Combo {
        std::int64_t n, d;
    };
    std::vector<Combo> valid;
    std::vector<Combo> rejected;
    for (std::int64_t n : ns)
        for (std::int64_t d : ds) {
            ProtocolConfig config;
            config.n = n;
            config.kappa = 2;
            config.d = d;
            config.randomizer = RandomizerConfig::from_gamma(2, 0.5);
            try {
                config.validate();
                valid.push_back({n, d});
            } catch (const config_error&) {
                rejected.push_back({n, d}); // d <= (kappa-1) n; not a runnable protocol
            }
        }

    std::atomic<std::int64_t> failures{0};
    std::atomic<std::int64_t> job{0};
    const std::int64_t total = static_cast<std::int64_t>(valid.size()) * kTrials;
    auto work = [&] {
        for (;;) {
            const std::int64_t id = job.fetch_add(1);
            if (id >= total) return;
            const Combo combo = valid[id / kTrials];
            const std::int64_t trial = id % kTrials;
            ProtocolConfig config;
            config.n = combo.n;
            config.kappa = 2;
            config.d = combo.d;
            config.randomizer = RandomizerConfig::from_gamma(2, 0.5);
            config.seed = derive_seed(0xA1000000ull + static_cast<std::uint64_t>(combo.n) * 100 +
                                          static_cast<std::uint64_t>(combo.d),
                                      static_cast<std::uint64_t>(trial));
            std::vector<std::int64_t> inputs(combo.n);
            for (std::int64_t i = 0; i < combo.n; ++i)
                inputs[i] = (trial >> i) & 1; // cycles through all 2^n tuples
            const ProtocolTranscript t = run_protocol(config, inputs);
            std::int64_t y_sum = 0;
            for (const ClientRecord& c : t.clients) y_sum += c.y;
            if (t.z != y_sum) failures.fetch_add(1);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < worker_count(); ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();

    std::ostringstream detail;
    detail << valid.size() << " valid (n,d) pairs x " << kTrials << " trials, "
           << (total - failures.load()) << "/" << total << " decoded m = sum y_i exactly; ";
    detail << rejected.size() << " pairs rejected by d > (kappa-1)n as required; ";
    detail << fmt(seconds_since(start)) << " s";
    return {"A1", failures.load() == 0 && rejected.size() == 2, detail.str()};
}

// A2: once the phases are encoded, every client's reduced density matrix is I/d entrywise
// within 1e-10, for every m, with the state distributed by real teleportation.
CriterionResult a2_state_privacy() {
    constexpr double kTol = 1e-10;
    double worst = 0.0;
    Rng rng(0xA2);
    for (std::int64_t n : {2, 3}) {
        for (std::int64_t d : {3, 5, 7}) {
            for (std::int64_t m = 0; m < d; ++m) {
                std::vector<std::int64_t> y(n, 0);
                y[0] = m;
                const StateVector state = state_after_phase_encoding(n, d, y, true, rng);
                const DensityMatrix rho = state.density();
                for (int client = 0; client < n; ++client) {
                    const DensityMatrix reduced = rho.partial_trace({client});
                    for (std::int64_t r = 0; r < d; ++r)
                        for (std::int64_t c = 0; c < d; ++c) {
                            const cdouble want = r == c ? cdouble{1.0 / static_cast<double>(d), 0.0}
                                                        : cdouble{};
                            worst = std::max(worst, std::abs(reduced.at(r, c) - want));
                        }
                }
            }
        }
    }
    std::ostringstream detail;
    detail << "max |rho_client - I/d| entry = " << fmt(worst) << " over n<=3, d<=7, all m (tol 1e-10)";
    return {"A2", worst <= kTol, detail.str()};
}

// A3: per-client outcome uniformity over 1e4 statevector runs.
CriterionResult a3_outcome_privacy() {
    constexpr std::int64_t kRuns = 10000;
    const std::int64_t n = 3, d = 5;
    std::vector<std::vector<std::int64_t>> hist(n, std::vector<std::int64_t>(d, 0));

    std::atomic<std::int64_t> next{0};
    std::vector<std::vector<std::vector<std::int64_t>>> partial(
        worker_count(), std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(d, 0)));
    auto work = [&](int w) {
        for (;;) {
            const std::int64_t run = next.fetch_add(1);
            if (run >= kRuns) return;
            ProtocolConfig config;
            config.n = n;
            config.kappa = 2;
            config.d = d;
            config.randomizer = RandomizerConfig::from_gamma(2, 0.5);
            config.seed = derive_seed(0xA3, static_cast<std::uint64_t>(run));
            const ProtocolTranscript t = run_protocol(config, {1, 0, 1});
            for (std::int64_t c = 0; c < n; ++c) partial[w][c][t.clients[c].z] += 1;
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < worker_count(); ++w) pool.emplace_back(work, w);
    for (std::thread& th : pool) th.join();
    for (const auto& part : partial)
        for (std::int64_t c = 0; c < n; ++c)
            for (std::int64_t v = 0; v < d; ++v) hist[c][v] += part[c][v];

    bool pass = true;
    std::ostringstream detail;
    detail << "chi-square uniformity p per client:";
    for (std::int64_t c = 0; c < n; ++c) {
        const double p = chi_square_uniform_pvalue(hist[c]);
        detail << " " << fmt(p);
        pass = pass && p > 0.01;
    }
    detail << " (need > 0.01, " << kRuns << " runs, n=3 d=5)";
    return {"A3", pass, detail.str()};
}

// A4: all d^2 forced (ell, s) teleportation branches return the initial state
// up to a global phase, and every branch has probability 1/d^2.
CriterionResult a4_teleportation() {
    double worst_fidelity = 1.0;
    double worst_prob_err = 0.0;
    for (std::int64_t d : {3, 5}) {
        const StateVector reference = prepare_ghz(2, d);
        const StateVector bell = prepare_bell(d);
        double prob_sum = 0.0;
        for (std::int64_t ell = 0; ell < d; ++ell) {
            for (std::int64_t s = 0; s < d; ++s) {
                StateVector work = reference;
                const double p = teleport_share_forced(work, 0, bell, ell, s);
                prob_sum += p;
                worst_prob_err = std::max(
                    worst_prob_err, std::abs(p - 1.0 / static_cast<double>(d * d)));
                const double fid = std::abs(work.inner_product(reference));
                worst_fidelity = std::min(worst_fidelity, fid);
            }
        }
        worst_prob_err = std::max(worst_prob_err, std::abs(prob_sum - 1.0));
    }
    std::ostringstream detail;
    detail << "min |<post|pre>| = " << fmt(worst_fidelity) << " (need >= 1-1e-9), max |p - 1/d^2| = "
           << fmt(worst_prob_err) << " over d in {3,5}, all (ell,s)";
    return {"A4", worst_fidelity >= 1.0 - 1e-9 && worst_prob_err <= 1e-9, detail.str()};
}

// A5: de-biased mean over 1e5 randomizer trials within 3 standard errors of
// the true sum (kappa=3, gamma=0.5, n=50).
CriterionResult a5_debias_unbiasedness() {
    constexpr std::int64_t kTrials = 100000;
    const std::int64_t n = 50, kappa = 3;
    const double gamma = 0.5;
    const RandomizerConfig config = RandomizerConfig::from_gamma(kappa, gamma);

    std::vector<std::int64_t> inputs(n);
    std::int64_t true_sum = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        inputs[i] = i % kappa;
        true_sum += inputs[i];
    }

    Rng rng(0xA5);
    std::vector<double> estimates;
    estimates.reserve(kTrials);
    for (std::int64_t t = 0; t < kTrials; ++t) {
        std::int64_t sum = 0;
        for (std::int64_t i = 0; i < n; ++i) sum += randomize(inputs[i], config, rng);
        estimates.push_back(debias(sum, n, kappa, gamma));
    }
    const double m = mean(estimates);
    const double se = sample_stddev(estimates) / std::sqrt(static_cast<double>(kTrials));
    const double dev = std::abs(m - static_cast<double>(true_sum));
    std::ostringstream detail;
    detail << "mean estimate " << fmt(m) << " vs true sum " << true_sum << ", |diff| = " << fmt(dev)
           << " <= 3 SE = " << fmt(3.0 * se);
    return {"A5", dev <= 3.0 * se, detail.str()};
}

// A6: empirical keep rate within 4 sigma of 1-(kappa-1)gamma/kappa, and the
// analytic LDP ratio equals e^epsilon within 1e-9 for gamma from epsilon.
CriterionResult a6_randomizer_law() {
    constexpr std::int64_t kSamples = 100000;
    const std::int64_t kappa = 4;
    const double epsilon = 1.0;
    const RandomizerConfig config = RandomizerConfig::from_epsilon(kappa, epsilon);
    const double p_keep =
        1.0 - static_cast<double>(kappa - 1) * config.gamma / static_cast<double>(kappa);

    Rng rng(0xA6);
    std::int64_t kept = 0;
    const std::int64_t x = 2;
    for (std::int64_t i = 0; i < kSamples; ++i)
        if (randomize(x, config, rng) == x) ++kept;
    const double empirical = static_cast<double>(kept) / static_cast<double>(kSamples);
    const double sigma = std::sqrt(p_keep * (1.0 - p_keep) / static_cast<double>(kSamples));
    const bool keep_ok = std::abs(empirical - p_keep) <= 4.0 * sigma;

    double worst_ratio_err = 0.0;
    for (std::int64_t k = 2; k <= 5; ++k) {
        for (double eps : {0.5, 1.0, 2.0}) {
            const double g = gamma_from_epsilon(k, eps);
            // Pr[y|x]: 1-g+g/k for y=x, g/k otherwise; the worst-case ratio.
            const double ratio = (1.0 - g + g / static_cast<double>(k)) / (g / static_cast<double>(k));
            worst_ratio_err = std::max(worst_ratio_err, std::abs(ratio - std::exp(eps)));
        }
    }
    std::ostringstream detail;
    detail << "empirical Pr[y=x] " << fmt(empirical) << " vs " << fmt(p_keep) << " (|diff| "
           << fmt(std::abs(empirical - p_keep)) << " <= 4 sigma " << fmt(4.0 * sigma)
           << "); max |ratio - e^eps| = " << fmt(worst_ratio_err) << " (tol 1e-9)";
    return {"A6", keep_ok && worst_ratio_err <= 1e-9, detail.str()};
}

// A7: dit-flip channel matches the classical randomizer (TV < 0.01 over 1e5
// samples each) and environment outcomes j >= kappa never occur.
CriterionResult a7_dit_flip_channel() {
    constexpr std::int64_t kSamples = 100000;
    const std::int64_t kappa = 3, d = 11, x = 1;
    const double gamma = 0.6;
    const RandomizerConfig config = RandomizerConfig::from_gamma(kappa, gamma);

    Rng rng_q(0xA701), rng_c(0xA702);
    std::vector<std::int64_t> qcounts(kappa, 0), ccounts(kappa, 0);
    std::int64_t oversized_env = 0;
    for (std::int64_t i = 0; i < kSamples; ++i) {
        const QuantumRandomizeResult q = quantum_randomize(x, kappa, d, gamma, rng_q);
        if (q.env_outcome >= kappa) ++oversized_env;
        qcounts[q.y] += 1;
        ccounts[randomize(x, config, rng_c)] += 1;
    }
    const double tv = total_variation(qcounts, ccounts);
    std::ostringstream detail;
    detail << "TV(quantum, classical) = " << fmt(tv) << " (need < 0.01), env outcomes >= kappa: "
           << oversized_env << " (need 0)";
    return {"A7", tv < 0.01 && oversized_env == 0, detail.str()};
}

// A8: tableau/statevector joint-outcome agreement plus the polynomial-time
// scale run (n=1000, d=10007) finishing encode+measure+decode in under 10 s.
CriterionResult a8_backend_equivalence_and_efficiency() {
    constexpr std::int64_t kSamples = 10000;
    const std::int64_t n = 3, d = 5;
    const std::vector<std::int64_t> y{1, 2, 0};

    std::int64_t cells = 1;
    for (std::int64_t i = 0; i < n; ++i) cells *= d;
    std::vector<std::int64_t> sv_counts(cells, 0), tb_counts(cells, 0);

    std::atomic<std::int64_t> next{0};
    std::vector<std::vector<std::int64_t>> sv_part(worker_count(), std::vector<std::int64_t>(cells, 0));
    std::vector<std::vector<std::int64_t>> tb_part(worker_count(), std::vector<std::int64_t>(cells, 0));
    auto work = [&](int w) {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= 2 * kSamples) return;
            const bool tableau_side = i >= kSamples;
            Rng rng = Rng::derive(tableau_side ? 0xA802 : 0xA801, static_cast<std::uint64_t>(i % kSamples));
            const std::vector<std::int64_t> z = sample_outcomes(
                n, d, y, tableau_side ? Backend::tableau : Backend::statevector, rng);
            std::int64_t cell = 0;
            for (std::int64_t zi : z) cell = cell * d + zi;
            (tableau_side ? tb_part : sv_part)[w][cell] += 1;
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < worker_count(); ++w) pool.emplace_back(work, w);
    for (std::thread& th : pool) th.join();
    for (int w = 0; w < worker_count(); ++w)
        for (std::int64_t c = 0; c < cells; ++c) {
            sv_counts[c] += sv_part[w][c];
            tb_counts[c] += tb_part[w][c];
        }
    const double p = chi_square_two_sample_pvalue(sv_counts, tb_counts);

    // Scale run on the tableau backend.
    const std::int64_t big_n = 1000, big_d = 10007;
    Rng rng(0xA803);
    const RandomizerConfig rand_config = RandomizerConfig::from_gamma(2, 0.5);
    std::vector<std::int64_t> big_y(big_n);
    std::int64_t big_sum = 0;
    for (std::int64_t i = 0; i < big_n; ++i) {
        big_y[i] = randomize(i % 2, rand_config, rng);
        big_sum += big_y[i];
    }
    const auto start = clock_type::now();
    const std::vector<std::int64_t> z = sample_outcomes(big_n, big_d, big_y, Backend::tableau, rng);
    const std::int64_t m = server_decode(z, big_d).value();
    const double estimate = debias(m, big_n, 2, rand_config.gamma);
    const double elapsed = seconds_since(start);
    const bool decode_ok = m == big_sum && std::isfinite(estimate);

    std::ostringstream detail;
    detail << "two-sample chi-square p = " << fmt(p) << " (need > 0.01, " << kSamples
           << " samples/backend); n=1000 d=10007 tableau run in " << fmt(elapsed)
           << " s (need < 10), decode exact: " << (decode_ok ? "yes" : "no");
    return {"A8", p > 0.01 && elapsed < 10.0 && decode_ok, detail.str()};
}

// A9: the closed-form sampler matches statevector outcomes and always
// satisfies ||z|| = -m (mod d).
CriterionResult a9_analytic_oracle() {
    constexpr std::int64_t kSamples = 10000;
    const std::int64_t n = 3, d = 3, m = 1;
    const std::vector<std::int64_t> y{1, 0, 0};

    std::int64_t cells = 27;
    std::vector<std::int64_t> sv_counts(cells, 0), an_counts(cells, 0);
    for (std::int64_t i = 0; i < kSamples; ++i) {
        Rng rng_sv = Rng::derive(0xA901, static_cast<std::uint64_t>(i));
        const std::vector<std::int64_t> zs = sample_outcomes(n, d, y, Backend::statevector, rng_sv);
        std::int64_t cell = 0;
        for (std::int64_t zi : zs) cell = cell * d + zi;
        sv_counts[cell] += 1;

        Rng rng_an = Rng::derive(0xA902, static_cast<std::uint64_t>(i));
        const std::vector<std::int64_t> za = analytic_sample(m, n, d, rng_an);
        cell = 0;
        for (std::int64_t zi : za) cell = cell * d + zi;
        an_counts[cell] += 1;
    }
    const double p = chi_square_two_sample_pvalue(sv_counts, an_counts);

    Rng rng(0xA903);
    std::int64_t violations = 0;
    constexpr std::int64_t kDraws = 1000000;
    for (std::int64_t i = 0; i < kDraws; ++i) {
        const std::vector<std::int64_t> z = analytic_sample(m, n, d, rng);
        std::int64_t norm = 0;
        for (std::int64_t zi : z) norm += zi;
        if (mod_reduce(norm + m, d) != 0) ++violations;
    }
    std::ostringstream detail;
    detail << "two-sample chi-square p = " << fmt(p) << " (need > 0.01); ||z|| = -m held in "
           << (kDraws - violations) << "/" << kDraws << " draws";
    return {"A9", p > 0.01 && violations == 0, detail.str()};
}

// A10: surface-code algebra for L <= 4, d in {3,5}.
CriterionResult a10_surface_code() {
    bool pass = true;
    std::ostringstream detail;

    std::int64_t commuting_pairs = 0;
    for (std::int64_t L : {2, 3, 4}) {
        for (std::int64_t d : {3, 5}) {
            const SurfaceCodeLattice lat = make_lattice(L, d);
            std::vector<CodeOperator> gens = build_generators(lat);
            const CommutationReport report = check_commutation(gens);
            if (!report.all_commute()) pass = false;
            commuting_pairs += static_cast<std::int64_t>(gens.size() * (gens.size() - 1) / 2);

            const auto [lx, lz] = build_logicals(lat, 1, 1);
            for (const CodeOperator& g : gens) {
                if (!commutes(g.op, lx.op) || !commutes(g.op, lz.op)) pass = false;
            }
            const std::int64_t form = commutation_exponent(lx.op, lz.op);
            if (form != 1 && form != d - 1) pass = false;

            // Single-qudit errors fire exactly the adjacent generators of the
            // dual type (faces for X errors, vertices for Z errors).
            for (int q = 0; q < static_cast<int>(lat.num_qudits()); ++q) {
                PauliOperator ex(d, static_cast<int>(lat.num_qudits()));
                ex.x[q] = 1;
                PauliOperator ez(d, static_cast<int>(lat.num_qudits()));
                ez.z[q] = 1;
                const std::vector<std::int64_t> sx = syndrome(gens, ex);
                const std::vector<std::int64_t> sz = syndrome(gens, ez);
                for (std::size_t g = 0; g < gens.size(); ++g) {
                    const bool x_adjacent = gens[g].kind == CodeOperator::Kind::face &&
                                            gens[g].op.z[q] != 0;
                    const bool z_adjacent = gens[g].kind == CodeOperator::Kind::vertex &&
                                            gens[g].op.x[q] != 0;
                    if ((sx[g] != 0) != x_adjacent) pass = false;
                    if ((sz[g] != 0) != z_adjacent) pass = false;
                }
            }
        }
    }

    // Syndrome linearity on random error pairs.
    {
        const SurfaceCodeLattice lat = make_lattice(3, 5);
        const std::vector<CodeOperator> gens = build_generators(lat);
        Rng rng(0xA10);
        for (int i = 0; i < 1000; ++i) {
            const PauliOperator e1 = sample_noise(lat, 0.2, rng);
            const PauliOperator e2 = sample_noise(lat, 0.2, rng);
            const std::vector<std::int64_t> s1 = syndrome(gens, e1);
            const std::vector<std::int64_t> s2 = syndrome(gens, e2);
            const std::vector<std::int64_t> s12 = syndrome(gens, multiply(e1, e2));
            for (std::size_t g = 0; g < gens.size(); ++g)
                if (s12[g] != mod_reduce(s1[g] + s2[g], 5)) pass = false;
        }
    }

    detail << "generator pairs commuting: " << commuting_pairs
           << "; logicals commute with all generators, Xbar/Zbar symplectic form +-1, "
              "syndrome linear on 1000 pairs, single-qudit errors fire exactly adjacent "
              "generators (L<=4, d in {3,5})";
    return {"A10", pass, detail.str()};
}

// A11: identical seed => byte-identical reports (summary strictly; trial
// records after masking the wall-clock elapsed_ns field).
CriterionResult a11_reproducibility() {
    const fs::path dir = fs::temp_directory_path() / "qsm_verify_a11";
    fs::create_directories(dir);

    auto run_once = [&](const std::string& tag) {
        ExperimentSpec spec;
        spec.n = 3;
        spec.kappa = 2;
        spec.d = 7;
        spec.gamma = 0.5;
        spec.trials = 50;
        spec.backend = Backend::statevector;
        spec.seed = 12345;
        spec.out_prefix = (dir / tag).string();
        spec.format = ExperimentSpec::Format::both;
        std::ostringstream sink;
        return run_experiment(spec, sink);
    };
    const ExperimentResult r1 = run_once("run1");
    const ExperimentResult r2 = run_once("run2");

    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string summary1 = slurp(r1.summary_path), summary2 = slurp(r2.summary_path);
    const bool summary_identical = !summary1.empty() && summary1 == summary2;

    const std::regex elapsed_re("\"elapsed_ns\":[0-9]+");
    const std::string t1 = std::regex_replace(slurp(r1.trials_path), elapsed_re, "\"elapsed_ns\":0");
    const std::string t2 = std::regex_replace(slurp(r2.trials_path), elapsed_re, "\"elapsed_ns\":0");
    const bool trials_identical = !t1.empty() && t1 == t2;

    std::ostringstream detail;
    detail << "summary.csv byte-identical: " << (summary_identical ? "yes" : "no")
           << "; trials.jsonl byte-identical outside the wall-clock elapsed_ns field: "
           << (trials_identical ? "yes" : "no");
    return {"A11", summary_identical && trials_identical, detail.str()};
}

} // namespace

std::vector<CriterionResult> run_acceptance_suite(std::ostream& out) {
    std::vector<CriterionResult> results;
    const auto run = [&](CriterionResult (*fn)()) {
        CriterionResult r = fn();
        out << r.id << (r.id.size() < 3 ? "   " : "  ") << (r.pass ? "PASS" : "FAIL") << "  "
            << r.detail << "\n";
        out.flush();
        results.push_back(std::move(r));
    };
    run(a1_exact_decoding);
    run(a2_state_privacy);
    run(a3_outcome_privacy);
    run(a4_teleportation);
    run(a5_debias_unbiasedness);
    run(a6_randomizer_law);
    run(a7_dit_flip_channel);
    run(a8_backend_equivalence_and_efficiency);
    run(a9_analytic_oracle);
    run(a10_surface_code);
    run(a11_reproducibility);

    out << "NOTE  out-of-scope: the shuffle-amplified local budget (e.g. eps_0 ~ 1.0032 for "
           "kappa=10, n=100, delta=1e-6, eps=0.1) comes from an external amplification-bound "
           "script; it is accepted as the --epsilon input, never recomputed here.\n";
    out << "NOTE  out-of-scope: surface-code decoding and its ~8.3% threshold; this toolkit "
           "builds generators, logical operators, noise samples and syndromes only.\n";
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

} // namespace qsm

#include "qsm/tableau.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>

#include "qsm/arith.hpp"
#include "qsm/errors.hpp"

namespace qsm {

PauliOperator::PauliOperator(std::int64_t d, int n) : d(d), phase(0), x(n, 0), z(n, 0) {
    if (!is_prime(d)) throw config_error("PauliOperator: dimension must be prime");
    if (n < 1) throw std::domain_error("PauliOperator: need at least one qudit");
}

PauliOperator PauliOperator::single(std::int64_t d, int n, int qudit, std::int64_t xe,
                                    std::int64_t ze, std::int64_t phase) {
    PauliOperator p(d, n);
    if (qudit < 0 || qudit >= n) throw std::domain_error("PauliOperator: qudit out of range");
    p.x[qudit] = mod_reduce(xe, d);
    p.z[qudit] = mod_reduce(ze, d);
    p.phase = mod_reduce(phase, d);
    return p;
}

bool PauliOperator::is_identity() const {
    if (phase != 0) return false;
    for (int i = 0; i < num_qudits(); ++i)
        if (x[i] != 0 || z[i] != 0) return false;
    return true;
}

namespace {

void check_same_shape(const PauliOperator& p, const PauliOperator& q) {
    if (p.d != q.d || p.num_qudits() != q.num_qudits())
        throw std::domain_error("PauliOperator: mismatched dimension or qudit count");
}

} // namespace

PauliOperator multiply(const PauliOperator& p, const PauliOperator& q) {
    check_same_shape(p, q);
    const std::int64_t d = p.d;
    PauliOperator out(d, p.num_qudits());
    std::int64_t reorder = 0;
    for (int i = 0; i < p.num_qudits(); ++i) {
        reorder = (reorder + q.x[i] * p.z[i]) % d;
        out.x[i] = (p.x[i] + q.x[i]) % d;
        out.z[i] = (p.z[i] + q.z[i]) % d;
    }
    out.phase = mod_reduce(p.phase + q.phase + reorder, d);
    return out;
}

PauliOperator pauli_pow(const PauliOperator& p, std::int64_t a) {
    const std::int64_t d = p.d;
    // The operator order divides d for odd d and 2d for d = 2.
    const std::int64_t period = (d % 2 == 1) ? d : 2 * d;
    a = mod_reduce(a, period);
    PauliOperator out(d, p.num_qudits());
    std::int64_t xz = 0;
    for (int i = 0; i < p.num_qudits(); ++i) {
        out.x[i] = p.x[i] * a % d;
        out.z[i] = p.z[i] * a % d;
        xz = (xz + p.x[i] * p.z[i]) % d;
    }
    out.phase = mod_reduce(a * p.phase + a * (a - 1) / 2 % d * xz, d);
    return out;
}

std::int64_t commutation_exponent(const PauliOperator& p, const PauliOperator& q) {
    check_same_shape(p, q);
    const std::int64_t d = p.d;
    std::int64_t acc = 0;
    for (int i = 0; i < p.num_qudits(); ++i) acc = (acc + q.x[i] * p.z[i] - p.x[i] * q.z[i]) % d;
    return mod_reduce(acc, d);
}

bool commutes(const PauliOperator& p, const PauliOperator& q) {
    return commutation_exponent(p, q) == 0;
}

Matrix pauli_to_matrix(const PauliOperator& p) {
    Matrix m = mat_pauli1(p.d, p.phase, p.x[0], p.z[0]);
    for (int i = 1; i < p.num_qudits(); ++i)
        m = mat_kron(m, mat_pauli1(p.d, 0, p.x[i], p.z[i]));
    return m;
}

namespace {

// Signed value in [-2, 2] matching the residues observed at d = 3 and d = 5.
std::int64_t reconcile_signed(std::int64_t r3, std::int64_t r5, const char* what) {
    for (std::int64_t v = -2; v <= 2; ++v)
        if (mod_reduce(v, 3) == r3 && mod_reduce(v, 5) == r5) return v;
    throw std::logic_error(std::string("clifford rule derivation: no small signed value for ") + what);
}

PauliPattern derive_pattern(const Matrix& u3, const Matrix& p3, const Matrix& u5, const Matrix& p5,
                            std::int64_t n_qudits, const char* what) {
    const PauliDecomposition d3 =
        pauli_from_matrix(3, n_qudits, mat_mul(mat_mul(u3, p3), mat_dagger(u3)));
    const PauliDecomposition d5 =
        pauli_from_matrix(5, n_qudits, mat_mul(mat_mul(u5, p5), mat_dagger(u5)));
    PauliPattern out;
    out.phase = reconcile_signed(d3.phase, d5.phase, what);
    for (std::int64_t q = 0; q < n_qudits; ++q) {
        out.x.push_back(reconcile_signed(d3.x[q], d5.x[q], what));
        out.z.push_back(reconcile_signed(d3.z[q], d5.z[q], what));
    }
    return out;
}

PauliOperator instantiate(const PauliPattern& pat, std::int64_t d) {
    PauliOperator p(d, static_cast<int>(pat.x.size()));
    p.phase = mod_reduce(pat.phase, d);
    for (std::size_t i = 0; i < pat.x.size(); ++i) {
        p.x[i] = mod_reduce(pat.x[i], d);
        p.z[i] = mod_reduce(pat.z[i], d);
    }
    return p;
}

} // namespace

const CliffordRules& clifford_rules() {
    static const CliffordRules rules = [] {
        CliffordRules r;
        const Matrix i3 = mat_identity(3), i5 = mat_identity(5);
        const Matrix x3 = mat_x(3), x5 = mat_x(5), z3 = mat_z(3), z5 = mat_z(5);

        const Matrix h3 = mat_h(3), h5 = mat_h(5);
        r.h_x = derive_pattern(h3, x3, h5, x5, 1, "H:X");
        r.h_z = derive_pattern(h3, z3, h5, z5, 1, "H:Z");
        const Matrix hi3 = mat_h(3, true), hi5 = mat_h(5, true);
        r.hinv_x = derive_pattern(hi3, x3, hi5, x5, 1, "Hinv:X");
        r.hinv_z = derive_pattern(hi3, z3, hi5, z5, 1, "Hinv:Z");

        const Matrix xc3 = mat_kron(x3, i3), xc5 = mat_kron(x5, i5);
        const Matrix zc3 = mat_kron(z3, i3), zc5 = mat_kron(z5, i5);
        const Matrix xt3 = mat_kron(i3, x3), xt5 = mat_kron(i5, x5);
        const Matrix zt3 = mat_kron(i3, z3), zt5 = mat_kron(i5, z5);
        const Matrix cx3 = mat_cx(3), cx5 = mat_cx(5);
        r.cx_xc = derive_pattern(cx3, xc3, cx5, xc5, 2, "CX:Xc");
        r.cx_zc = derive_pattern(cx3, zc3, cx5, zc5, 2, "CX:Zc");
        r.cx_xt = derive_pattern(cx3, xt3, cx5, xt5, 2, "CX:Xt");
        r.cx_zt = derive_pattern(cx3, zt3, cx5, zt5, 2, "CX:Zt");
        const Matrix cxi3 = mat_cx(3, true), cxi5 = mat_cx(5, true);
        r.cxinv_xc = derive_pattern(cxi3, xc3, cxi5, xc5, 2, "CXinv:Xc");
        r.cxinv_zc = derive_pattern(cxi3, zc3, cxi5, zc5, 2, "CXinv:Zc");
        r.cxinv_xt = derive_pattern(cxi3, xt3, cxi5, xt5, 2, "CXinv:Xt");
        r.cxinv_zt = derive_pattern(cxi3, zt3, cxi5, zt5, 2, "CXinv:Zt");
        return r;
    }();
    return rules;
}

namespace {

// Image of X^a Z^b (single qudit) or the four-exponent two-qudit Pauli under
// the gate, computed from the generator images.
PauliOperator conjugate1(const PauliOperator& img_x, const PauliOperator& img_z, std::int64_t a,
                         std::int64_t b) {
    return multiply(pauli_pow(img_x, a), pauli_pow(img_z, b));
}

PauliOperator conjugate2(const PauliOperator& img_xc, const PauliOperator& img_zc,
                         const PauliOperator& img_xt, const PauliOperator& img_zt,
                         std::int64_t ac, std::int64_t bc, std::int64_t at, std::int64_t bt) {
    return multiply(multiply(pauli_pow(img_xc, ac), pauli_pow(img_zc, bc)),
                    multiply(pauli_pow(img_xt, at), pauli_pow(img_zt, bt)));
}

void rules_check_failed(const char* gate) {
    throw std::logic_error(std::string("clifford rule validation failed for ") + gate);
}

// Exact symbolic spot checks of the instantiated rules against the defining
// circuit actions, valid for arbitrary d (no dense matrices involved).
void spot_check_rules(std::int64_t d) {
    Rng rng(0xC0FFEEull ^ static_cast<std::uint64_t>(d));
    const CliffordRules& r = clifford_rules();
    const PauliOperator hx = instantiate(r.h_x, d), hz = instantiate(r.h_z, d);
    const PauliOperator hix = instantiate(r.hinv_x, d), hiz = instantiate(r.hinv_z, d);
    const PauliOperator cxc = instantiate(r.cx_xc, d), czc = instantiate(r.cx_zc, d);
    const PauliOperator cxt = instantiate(r.cx_xt, d), czt = instantiate(r.cx_zt, d);
    const PauliOperator ixc = instantiate(r.cxinv_xc, d), izc = instantiate(r.cxinv_zc, d);
    const PauliOperator ixt = instantiate(r.cxinv_xt, d), izt = instantiate(r.cxinv_zt, d);

    auto draw = [&] { return static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d))); };

    for (int iter = 0; iter < 16; ++iter) {
        const std::int64_t a = draw(), b = draw(), j = draw(), s = draw();

        // Q H|s> == H X^a Z^b |s>, coefficient at |j>.
        {
            const PauliOperator q = conjugate1(hx, hz, a, b);
            const std::int64_t lhs = q.phase + (j - q.x[0]) * (s + q.z[0]);
            const std::int64_t rhs = b * s + j * (s + a);
            if (mod_reduce(lhs - rhs, d) != 0) rules_check_failed("H");
        }
        // Q Hinv|s> == Hinv X^a Z^b |s>.
        {
            const PauliOperator q = conjugate1(hix, hiz, a, b);
            const std::int64_t lhs = q.phase + (j - q.x[0]) * (q.z[0] - s);
            const std::int64_t rhs = b * s - j * (s + a);
            if (mod_reduce(lhs - rhs, d) != 0) rules_check_failed("Hinv");
        }

        const std::int64_t ac = draw(), bc = draw(), at = draw(), bt = draw();
        const std::int64_t sc = draw(), st = draw();
        // Q CX|sc,st> == CX P|sc,st>.
        {
            const PauliOperator q = conjugate2(cxc, czc, cxt, czt, ac, bc, at, bt);
            const std::int64_t lphase = q.phase + q.z[0] * sc + q.z[1] * (st + sc);
            const std::int64_t rphase = bc * sc + bt * st;
            const bool digits_ok = mod_reduce(sc + q.x[0] - (sc + ac), d) == 0 &&
                                   mod_reduce(st + sc + q.x[1] - (st + at + sc + ac), d) == 0;
            if (!digits_ok || mod_reduce(lphase - rphase, d) != 0) rules_check_failed("CX");
        }
        // Q CXinv|sc,st> == CXinv P|sc,st>.
        {
            const PauliOperator q = conjugate2(ixc, izc, ixt, izt, ac, bc, at, bt);
            const std::int64_t lphase = q.phase + q.z[0] * sc + q.z[1] * (st - sc);
            const std::int64_t rphase = bc * sc + bt * st;
            const bool digits_ok = mod_reduce(sc + q.x[0] - (sc + ac), d) == 0 &&
                                   mod_reduce(st - sc + q.x[1] - (st + at - sc - ac), d) == 0;
            if (!digits_ok || mod_reduce(lphase - rphase, d) != 0) rules_check_failed("CXinv");
        }
    }
}

} // namespace

void validate_clifford_rules(std::int64_t d) {
    static std::mutex mu;
    static std::set<std::int64_t> validated;
    std::lock_guard lock(mu);
    if (validated.contains(d)) return;
    spot_check_rules(d);
    validated.insert(d);
}

StabilizerTableau::StabilizerTableau(std::int64_t d, std::vector<PauliOperator> generators)
    : d_(d), gens_(std::move(generators)) {
    if (d == 2)
        throw unsupported_error(
            "tableau backend supports odd prime d only (d=2 phases need factors of i)");
    if (!is_prime(d)) throw config_error("StabilizerTableau: dimension must be prime");
    if (gens_.empty()) throw std::domain_error("StabilizerTableau: no generators");
    n_ = gens_.front().num_qudits();
    if (static_cast<int>(gens_.size()) != n_)
        throw std::domain_error("StabilizerTableau: need exactly n generators");
    for (const PauliOperator& g : gens_)
        if (g.d != d || g.num_qudits() != n_)
            throw std::domain_error("StabilizerTableau: generator shape mismatch");
    validate_clifford_rules(d);
}

StabilizerTableau StabilizerTableau::zero_state(int n, std::int64_t d) {
    std::vector<PauliOperator> gens;
    gens.reserve(n);
    for (int i = 0; i < n; ++i) gens.push_back(PauliOperator::single(d, n, i, 0, 1));
    return StabilizerTableau(d, std::move(gens));
}

StabilizerTableau StabilizerTableau::ghz(int n, std::int64_t d) {
    std::vector<PauliOperator> gens;
    gens.reserve(n);
    PauliOperator all_x(d, n);
    for (int i = 0; i < n; ++i) all_x.x[i] = 1;
    gens.push_back(std::move(all_x));
    for (int i = 0; i + 1 < n; ++i) {
        PauliOperator chain(d, n);
        chain.z[i] = 1;
        chain.z[i + 1] = d - 1;
        gens.push_back(std::move(chain));
    }
    return StabilizerTableau(d, std::move(gens));
}

void StabilizerTableau::apply_h(int target, bool inverse) {
    if (target < 0 || target >= n_) throw std::domain_error("apply_h: qudit out of range");
    const CliffordRules& r = clifford_rules();
    const PauliOperator img_x = instantiate(inverse ? r.hinv_x : r.h_x, d_);
    const PauliOperator img_z = instantiate(inverse ? r.hinv_z : r.h_z, d_);
    for (PauliOperator& g : gens_) {
        if (g.x[target] == 0 && g.z[target] == 0) continue;
        const PauliOperator res = conjugate1(img_x, img_z, g.x[target], g.z[target]);
        g.phase = mod_reduce(g.phase + res.phase, d_);
        g.x[target] = res.x[0];
        g.z[target] = res.z[0];
    }
}

void StabilizerTableau::apply_cx(int control, int target, bool inverse) {
    if (control < 0 || control >= n_ || target < 0 || target >= n_)
        throw std::domain_error("apply_cx: qudit out of range");
    if (control == target) throw std::domain_error("apply_cx: control equals target");
    const CliffordRules& r = clifford_rules();
    const PauliOperator img_xc = instantiate(inverse ? r.cxinv_xc : r.cx_xc, d_);
    const PauliOperator img_zc = instantiate(inverse ? r.cxinv_zc : r.cx_zc, d_);
    const PauliOperator img_xt = instantiate(inverse ? r.cxinv_xt : r.cx_xt, d_);
    const PauliOperator img_zt = instantiate(inverse ? r.cxinv_zt : r.cx_zt, d_);
    for (PauliOperator& g : gens_) {
        if (g.x[control] == 0 && g.z[control] == 0 && g.x[target] == 0 && g.z[target] == 0)
            continue;
        const PauliOperator res = conjugate2(img_xc, img_zc, img_xt, img_zt, g.x[control],
                                             g.z[control], g.x[target], g.z[target]);
        g.phase = mod_reduce(g.phase + res.phase, d_);
        g.x[control] = res.x[0];
        g.z[control] = res.z[0];
        g.x[target] = res.x[1];
        g.z[target] = res.z[1];
    }
}

void StabilizerTableau::apply_x_pow(int target, std::int64_t a) {
    if (target < 0 || target >= n_) throw std::domain_error("apply_x_pow: qudit out of range");
    const std::int64_t e = mod_reduce(a, d_);
    for (PauliOperator& g : gens_) g.phase = mod_reduce(g.phase - e * g.z[target], d_);
}

void StabilizerTableau::apply_z_pow(int target, std::int64_t a) {
    if (target < 0 || target >= n_) throw std::domain_error("apply_z_pow: qudit out of range");
    const std::int64_t e = mod_reduce(a, d_);
    for (PauliOperator& g : gens_) g.phase = mod_reduce(g.phase + e * g.x[target], d_);
}

std::int64_t StabilizerTableau::measure_z(int target, Rng& rng) {
    if (target < 0 || target >= n_) throw std::domain_error("measure_z: qudit out of range");

    int pivot = -1;
    for (int i = 0; i < n_; ++i) {
        if (gens_[i].x[target] != 0) {
            pivot = i;
            break;
        }
    }
    if (pivot < 0) return deterministic_outcome(target);

    // Z_target anti-commutes with some generator: the outcome is uniform.
    const auto outcome = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d_)));
    gens_[pivot] = pauli_pow(gens_[pivot], mod_inverse(gens_[pivot].x[target], d_));
    for (int i = 0; i < n_; ++i) {
        if (i == pivot || gens_[i].x[target] == 0) continue;
        gens_[i] = multiply(gens_[i], pauli_pow(gens_[pivot], d_ - gens_[i].x[target]));
    }
    gens_[pivot] = PauliOperator::single(d_, n_, target, 0, 1, mod_reduce(-outcome, d_));
    return outcome;
}

std::int64_t StabilizerTableau::deterministic_outcome(int target) const {
    // Express Z_target as a product of generators: solve sum_g a_g (x_g|z_g)
    // = (0|e_target) over Z_d, then multiply out to pick up the phase.
    const int rows = 2 * n_;
    std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(n_ + 1, 0));
    for (int g = 0; g < n_; ++g)
        for (int q = 0; q < n_; ++q) {
            m[q][g] = gens_[g].x[q];
            m[n_ + q][g] = gens_[g].z[q];
        }
    m[n_ + target][n_] = 1;

    std::vector<int> pivot_row_of(n_, -1);
    int rank = 0;
    for (int col = 0; col < n_ && rank < rows; ++col) {
        int pr = -1;
        for (int r = rank; r < rows; ++r) {
            if (m[r][col] != 0) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap(m[pr], m[rank]);
        const std::int64_t inv = mod_inverse(m[rank][col], d_);
        for (std::int64_t& v : m[rank]) v = v * inv % d_;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const std::int64_t factor = m[r][col];
            for (int c = col; c <= n_; ++c) m[r][c] = mod_reduce(m[r][c] - factor * m[rank][c], d_);
        }
        pivot_row_of[col] = rank;
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (m[r][n_] != 0)
            throw std::logic_error("measure_z: Z_target is not in the stabilizer group");

    PauliOperator prod = PauliOperator::identity(d_, n_);
    for (int g = 0; g < n_; ++g) {
        const std::int64_t coeff = pivot_row_of[g] >= 0 ? m[pivot_row_of[g]][n_] : 0;
        if (coeff != 0) prod = multiply(prod, pauli_pow(gens_[g], coeff));
    }
    const PauliOperator want = PauliOperator::single(d_, n_, target, 0, 1);
    if (prod.x != want.x || prod.z != want.z)
        throw std::logic_error("measure_z: generator decomposition check failed");
    return mod_reduce(-prod.phase, d_);
}

void StabilizerTableau::check_invariants() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (!commutes(gens_[i], gens_[j]))
                throw std::logic_error("tableau invariant violated: generators do not commute");

    // Full row rank of the n x 2n exponent matrix over Z_d.
    std::vector<std::vector<std::int64_t>> m(n_, std::vector<std::int64_t>(2 * n_, 0));
    for (int g = 0; g < n_; ++g)
        for (int q = 0; q < n_; ++q) {
            m[g][q] = gens_[g].x[q];
            m[g][n_ + q] = gens_[g].z[q];
        }
    int rank = 0;
    for (int col = 0; col < 2 * n_ && rank < n_; ++col) {
        int pr = -1;
        for (int r = rank; r < n_; ++r) {
            if (m[r][col] != 0) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap(m[pr], m[rank]);
        const std::int64_t inv = mod_inverse(m[rank][col], d_);
        for (std::int64_t& v : m[rank]) v = v * inv % d_;
        for (int r = 0; r < n_; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const std::int64_t factor = m[r][col];
            for (int c = col; c < 2 * n_; ++c)
                m[r][c] = mod_reduce(m[r][c] - factor * m[rank][c], d_);
        }
        ++rank;
    }
    if (rank != n_)
        throw std::logic_error("tableau invariant violated: generator rows are dependent");
}

} // namespace qsm

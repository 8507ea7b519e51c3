#include "qsm/statevec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qsm/arith.hpp"
#include "qsm/errors.hpp"

namespace qsm {

namespace {

constexpr double kNormTol = 1e-6;

std::int64_t checked_pow(std::int64_t d, int n, std::int64_t cap) {
    std::int64_t size = 1;
    for (int i = 0; i < n; ++i) {
        if (size > cap / d)
            throw config_error("state of " + std::to_string(n) + " qudits of dimension " +
                               std::to_string(d) + " exceeds the amplitude cap");
        size *= d;
    }
    return size;
}

} // namespace

DensityMatrix::DensityMatrix(std::vector<std::int64_t> dims, std::vector<cdouble> entries)
    : dims_(std::move(dims)) {
    dim_ = 1;
    for (std::int64_t d : dims_) {
        if (d < 2) throw std::domain_error("DensityMatrix: subsystem dimension < 2");
        dim_ *= d;
    }
    if (static_cast<std::int64_t>(entries.size()) != dim_ * dim_)
        throw std::domain_error("DensityMatrix: entry count does not match dims");
    entries_ = std::move(entries);

    const double tol = 1e-8;
    for (std::int64_t r = 0; r < dim_; ++r)
        for (std::int64_t c = r; c < dim_; ++c)
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol)
                throw std::domain_error("DensityMatrix: not Hermitian");
    if (std::abs(trace() - cdouble{1.0, 0.0}) > tol)
        throw std::domain_error("DensityMatrix: trace is not 1");
}

cdouble DensityMatrix::trace() const {
    cdouble t{};
    for (std::int64_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double DensityMatrix::max_abs_diff(const DensityMatrix& other) const {
    if (other.dim_ != dim_) throw std::domain_error("DensityMatrix: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    return worst;
}

DensityMatrix DensityMatrix::partial_trace(const std::vector<int>& keep) const {
    const int n = static_cast<int>(dims_.size());
    if (keep.empty()) throw std::domain_error("partial_trace: keep set is empty");
    std::vector<bool> kept(n, false);
    for (int q : keep) {
        if (q < 0 || q >= n) throw std::domain_error("partial_trace: subsystem index out of range");
        if (kept[q]) throw std::domain_error("partial_trace: duplicate subsystem index");
        kept[q] = true;
    }

    std::vector<std::int64_t> strides(n);
    std::int64_t s = 1;
    for (int q = n - 1; q >= 0; --q) {
        strides[q] = s;
        s *= dims_[q];
    }

    std::vector<int> traced;
    std::vector<std::int64_t> keep_dims;
    for (int q = 0; q < n; ++q) {
        if (kept[q]) keep_dims.push_back(dims_[q]);
        else traced.push_back(q);
    }
    std::int64_t keep_size = 1;
    for (std::int64_t d : keep_dims) keep_size *= d;

    // Offsets of every keep-digit combination and every traced-digit combination.
    auto offsets_for = [&](const std::vector<int>& subsystems) {
        std::vector<std::int64_t> offs{0};
        for (int q : subsystems) {
            std::vector<std::int64_t> next;
            next.reserve(offs.size() * dims_[q]);
            for (std::int64_t base : offs)
                for (std::int64_t v = 0; v < dims_[q]; ++v) next.push_back(base + v * strides[q]);
            offs = std::move(next);
        }
        return offs;
    };
    std::vector<int> kept_list;
    for (int q = 0; q < n; ++q)
        if (kept[q]) kept_list.push_back(q);
    const std::vector<std::int64_t> keep_offs = offsets_for(kept_list);
    const std::vector<std::int64_t> trace_offs = offsets_for(traced);

    std::vector<cdouble> out(keep_size * keep_size);
    for (std::int64_t r = 0; r < keep_size; ++r)
        for (std::int64_t c = 0; c < keep_size; ++c) {
            cdouble acc{};
            for (std::int64_t t : trace_offs) acc += at(keep_offs[r] + t, keep_offs[c] + t);
            out[r * keep_size + c] = acc;
        }
    return DensityMatrix(keep_dims, std::move(out));
}

StateVector::StateVector(int n, std::int64_t d, std::int64_t amp_cap) : n_(n), d_(d), amp_cap_(amp_cap) {
    if (n < 1) throw std::domain_error("StateVector: need at least one qudit");
    if (!is_prime(d)) throw config_error("StateVector: dimension " + std::to_string(d) + " is not prime");
    amp_.assign(checked_pow(d, n, amp_cap), cdouble{});
    amp_[0] = 1.0;
}

StateVector StateVector::basis_state(int n, std::int64_t d, const std::vector<std::int64_t>& digits,
                                     std::int64_t amp_cap) {
    if (static_cast<int>(digits.size()) != n)
        throw std::domain_error("basis_state: digit count does not match qudit count");
    StateVector psi(n, d, amp_cap);
    std::int64_t index = 0;
    for (std::int64_t digit : digits) {
        if (digit < 0 || digit >= d) throw std::domain_error("basis_state: digit out of range");
        index = index * d + digit;
    }
    psi.amp_[0] = 0.0;
    psi.amp_[index] = 1.0;
    return psi;
}

StateVector StateVector::from_amplitudes(int n, std::int64_t d, std::vector<cdouble> amplitudes,
                                         std::int64_t amp_cap) {
    StateVector psi(n, d, amp_cap);
    if (amplitudes.size() != psi.amp_.size())
        throw std::domain_error("from_amplitudes: amplitude count does not match d^n");
    psi.amp_ = std::move(amplitudes);
    return psi;
}

std::int64_t StateVector::stride(int qudit) const {
    std::int64_t s = 1;
    for (int q = n_ - 1; q > qudit; --q) s *= d_;
    return s;
}

void StateVector::check_target(int target) const {
    if (target < 0 || target >= n_) throw std::domain_error("qudit index out of range");
}

void StateVector::apply_x_pow(int target, std::int64_t a) {
    check_target(target);
    const std::int64_t shift = mod_reduce(a, d_);
    if (shift == 0) return;
    const std::int64_t st = stride(target);
    const std::int64_t block = st * d_;
    const std::int64_t size = this->size();
    std::vector<cdouble> buf(d_);
    for (std::int64_t base = 0; base < size; base += block) {
        for (std::int64_t off = 0; off < st; ++off) {
            cdouble* fiber = amp_.data() + base + off;
            for (std::int64_t j = 0; j < d_; ++j) buf[j] = fiber[j * st];
            for (std::int64_t j = 0; j < d_; ++j) fiber[(j + shift) % d_ * st] = buf[j];
        }
    }
}

void StateVector::apply_z_pow(int target, std::int64_t a) {
    check_target(target);
    const std::int64_t e = mod_reduce(a, d_);
    if (e == 0) return;
    std::vector<cdouble> phase(d_);
    for (std::int64_t s = 0; s < d_; ++s) phase[s] = root_of_unity(e * s, d_);
    const std::int64_t st = stride(target);
    const std::int64_t block = st * d_;
    const std::int64_t size = this->size();
    for (std::int64_t base = 0; base < size; base += block)
        for (std::int64_t s = 0; s < d_; ++s) {
            cdouble* row = amp_.data() + base + s * st;
            const cdouble w = phase[s];
            for (std::int64_t off = 0; off < st; ++off) row[off] *= w;
        }
}

void StateVector::apply_h(int target, bool inverse) {
    check_target(target);
    // omega^{js} table indexed by (j*s) mod d.
    std::vector<cdouble> w(d_);
    for (std::int64_t k = 0; k < d_; ++k) w[k] = root_of_unity(inverse ? -k : k, d_);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d_));
    const std::int64_t st = stride(target);
    const std::int64_t block = st * d_;
    const std::int64_t size = this->size();
    std::vector<cdouble> buf(d_);
    std::vector<std::int64_t> support(d_);
    for (std::int64_t base = 0; base < size; base += block) {
        for (std::int64_t off = 0; off < st; ++off) {
            cdouble* fiber = amp_.data() + base + off;
            std::int64_t nnz = 0;
            for (std::int64_t s = 0; s < d_; ++s) {
                buf[s] = fiber[s * st];
                if (buf[s] != cdouble{}) support[nnz++] = s;
            }
            if (nnz == 0) continue;
            if (4 * nnz <= d_) {
                // Mostly-empty fiber (the common case mid-teleport): sum over
                // the support only.
                for (std::int64_t j = 0; j < d_; ++j) {
                    cdouble acc{};
                    for (std::int64_t k = 0; k < nnz; ++k)
                        acc += w[j * support[k] % d_] * buf[support[k]];
                    fiber[j * st] = acc * scale;
                }
            } else {
                for (std::int64_t j = 0; j < d_; ++j) {
                    cdouble acc{};
                    std::int64_t idx = 0;
                    for (std::int64_t s = 0; s < d_; ++s) {
                        acc += w[idx] * buf[s];
                        idx += j;
                        if (idx >= d_) idx -= d_;
                    }
                    fiber[j * st] = acc * scale;
                }
            }
        }
    }
}

void StateVector::apply_cx(int control, int target, bool inverse) {
    check_target(control);
    check_target(target);
    if (control == target) throw std::domain_error("apply_cx: control equals target");
    const std::int64_t st = stride(target);
    const std::int64_t sc = stride(control);
    const std::int64_t block = st * d_;
    const std::int64_t size = this->size();
    std::vector<cdouble> buf(d_);
    for (std::int64_t base = 0; base < size; base += block) {
        for (std::int64_t off = 0; off < st; ++off) {
            const std::int64_t s = (base + off) / sc % d_;
            const std::int64_t shift = inverse ? (d_ - s) % d_ : s;
            if (shift == 0) continue;
            cdouble* fiber = amp_.data() + base + off;
            for (std::int64_t r = 0; r < d_; ++r) buf[r] = fiber[r * st];
            for (std::int64_t r = 0; r < d_; ++r) fiber[(r + shift) % d_ * st] = buf[r];
        }
    }
}

std::vector<double> StateVector::outcome_probabilities(int target) const {
    check_target(target);
    std::vector<double> probs(d_, 0.0);
    const std::int64_t st = stride(target);
    const std::int64_t block = st * d_;
    const std::int64_t size = this->size();
    for (std::int64_t base = 0; base < size; base += block)
        for (std::int64_t s = 0; s < d_; ++s) {
            const cdouble* row = amp_.data() + base + s * st;
            double acc = 0.0;
            for (std::int64_t off = 0; off < st; ++off) acc += std::norm(row[off]);
            probs[s] += acc;
        }
    return probs;
}

void StateVector::collapse_to(int target, std::int64_t outcome, double prob) {
    const double rescale = 1.0 / std::sqrt(prob);
    const std::int64_t st = stride(target);
    const std::int64_t block = st * d_;
    const std::int64_t size = this->size();
    for (std::int64_t base = 0; base < size; base += block)
        for (std::int64_t s = 0; s < d_; ++s) {
            cdouble* row = amp_.data() + base + s * st;
            if (s == outcome)
                for (std::int64_t off = 0; off < st; ++off) row[off] *= rescale;
            else
                for (std::int64_t off = 0; off < st; ++off) row[off] = cdouble{};
        }
}

std::int64_t StateVector::measure_z(int target, Rng& rng) {
    const std::vector<double> probs = outcome_probabilities(target);
    double total = 0.0;
    for (double p : probs) total += p;
    if (std::abs(total - 1.0) > kNormTol)
        throw std::runtime_error("measure_z: state norm violation");

    const double u = rng.uniform01() * total;
    double cum = 0.0;
    std::int64_t outcome = d_ - 1;
    for (std::int64_t s = 0; s < d_; ++s) {
        cum += probs[s];
        if (u < cum) {
            outcome = s;
            break;
        }
    }
    collapse_to(target, outcome, probs[outcome]);
    return outcome;
}

double StateVector::project_z(int target, std::int64_t outcome) {
    check_target(target);
    if (outcome < 0 || outcome >= d_) throw std::domain_error("project_z: outcome out of range");
    const std::vector<double> probs = outcome_probabilities(target);
    const double p = probs[outcome];
    if (p < 1e-12) throw std::runtime_error("project_z: branch has zero probability");
    collapse_to(target, outcome, p);
    return p;
}

void StateVector::drop_qudit(int target, std::int64_t digit) {
    check_target(target);
    if (n_ == 1) throw std::domain_error("drop_qudit: cannot drop the last qudit");
    if (digit < 0 || digit >= d_) throw std::domain_error("drop_qudit: digit out of range");
    const std::int64_t st = stride(target);
    const std::int64_t block = st * d_;
    const std::int64_t size = this->size();

    std::vector<cdouble> next(size / d_);
    std::int64_t w = 0;
    double dropped_mass = 0.0;
    for (std::int64_t base = 0; base < size; base += block) {
        for (std::int64_t s = 0; s < d_; ++s) {
            const cdouble* row = amp_.data() + base + s * st;
            if (s == digit) {
                for (std::int64_t off = 0; off < st; ++off) next[w + off] = row[off];
            } else {
                for (std::int64_t off = 0; off < st; ++off) dropped_mass += std::norm(row[off]);
            }
        }
        w += st;
    }
    if (dropped_mass > 1e-9)
        throw std::runtime_error("drop_qudit: qudit is not collapsed onto the given digit");
    amp_ = std::move(next);
    --n_;
}

void StateVector::permute_qudits(const std::vector<int>& source_of) {
    if (static_cast<int>(source_of.size()) != n_)
        throw std::domain_error("permute_qudits: permutation size mismatch");
    std::vector<bool> seen(n_, false);
    for (int q : source_of) {
        if (q < 0 || q >= n_ || seen[q]) throw std::domain_error("permute_qudits: not a permutation");
        seen[q] = true;
    }

    std::vector<std::int64_t> old_strides(n_), new_strides(n_);
    std::int64_t s = 1;
    for (int q = n_ - 1; q >= 0; --q) {
        old_strides[q] = s;
        s *= d_;
    }
    for (int q = 0; q < n_; ++q) new_strides[q] = old_strides[q];

    const std::int64_t size = this->size();
    std::vector<cdouble> next(size);
    std::vector<std::int64_t> digits(n_);
    for (std::int64_t idx = 0; idx < size; ++idx) {
        std::int64_t rest = idx;
        for (int q = 0; q < n_; ++q) {
            digits[q] = rest / old_strides[q];
            rest %= old_strides[q];
        }
        std::int64_t to = 0;
        for (int q = 0; q < n_; ++q) to += digits[source_of[q]] * new_strides[q];
        next[to] = amp_[idx];
    }
    amp_ = std::move(next);
}

StateVector StateVector::tensor(const StateVector& other) const {
    if (other.d_ != d_) throw std::domain_error("tensor: qudit dimensions differ");
    StateVector out;
    out.n_ = n_ + other.n_;
    out.d_ = d_;
    out.amp_cap_ = amp_cap_;
    checked_pow(d_, out.n_, amp_cap_);
    out.amp_.resize(size() * other.size());
    std::int64_t w = 0;
    for (std::int64_t i = 0; i < size(); ++i) {
        const cdouble v = amp_[i];
        if (v == cdouble{}) {
            w += other.size();
            continue;
        }
        for (std::int64_t j = 0; j < other.size(); ++j) out.amp_[w++] = v * other.amp_[j];
    }
    return out;
}

cdouble StateVector::inner_product(const StateVector& other) const {
    if (other.n_ != n_ || other.d_ != d_) throw std::domain_error("inner_product: shape mismatch");
    cdouble acc{};
    for (std::int64_t i = 0; i < size(); ++i) acc += std::conj(amp_[i]) * other.amp_[i];
    return acc;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const cdouble& v : amp_) acc += std::norm(v);
    return std::sqrt(acc);
}

bool StateVector::equal_up_to_global_phase(const StateVector& other, double tol) const {
    return std::abs(std::abs(inner_product(other)) - 1.0) <= tol;
}

DensityMatrix StateVector::density() const {
    const std::int64_t dim = size();
    std::vector<cdouble> entries(dim * dim);
    for (std::int64_t r = 0; r < dim; ++r)
        for (std::int64_t c = 0; c < dim; ++c) entries[r * dim + c] = amp_[r] * std::conj(amp_[c]);
    return DensityMatrix(std::vector<std::int64_t>(n_, d_), std::move(entries));
}

} // namespace qsm

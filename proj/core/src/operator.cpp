// Copyright 2026 The qetsim Authors
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

#include "qet/operator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qet {

namespace {

constexpr std::size_t kMaxDim = 8;

bool valid_dim(std::size_t dim) { return dim == 1 || dim == 2 || dim == 4 || dim == 8; }

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()) + ")");
    }
}

std::size_t position_of(QubitLabel label, const QubitOrder& system) {
    auto it = std::find(system.begin(), system.end(), label);
    if (it == system.end()) {
        throw std::invalid_argument("qubit " + to_string(label) + " is not part of the register");
    }
    return static_cast<std::size_t>(it - system.begin());
}

void require_distinct(const QubitOrder& system) {
    for (std::size_t i = 0; i < system.size(); ++i) {
        for (std::size_t j = i + 1; j < system.size(); ++j) {
            if (system[i] == system[j]) throw std::invalid_argument("register lists qubit " + to_string(system[i]) + " twice");
        }
    }
}

// Bit of basis index `index` that carries register position `pos` of an n-qubit register.
std::size_t bit_of(std::size_t index, std::size_t pos, std::size_t n) { return (index >> (n - 1 - pos)) & 1U; }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (!valid_dim(dim)) throw std::invalid_argument("matrix dimension must be 1, 2, 4 or 8, got " + std::to_string(dim));
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : ComplexMatrix(rows.size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != dim_) throw std::invalid_argument("matrix literal is not square");
        std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
        ++r;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    if (ket.size() != bra.size()) throw std::invalid_argument("outer: vector length mismatch");
    ComplexMatrix m(ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i) {
        for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
    }
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> psi) { return outer(psi, psi); }

std::size_t ComplexMatrix::num_qubits() const {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim_) ++n;
    return n;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

bool ComplexMatrix::is_hermitian(double tol) const { return max_abs_diff(*this, adjoint()) <= tol; }

bool ComplexMatrix::is_unitary(double tol) const { return unitarity_residual(*this) <= tol; }

bool ComplexMatrix::is_density_matrix(double tol) const {
    if (!is_hermitian(tol)) return false;
    if (std::abs(trace() - Complex(1.0)) > tol) return false;
    return hermitian_eig(*this, tol).values.front() >= -tol;
}

std::string ComplexMatrix::to_string(int precision) const {
    std::ostringstream os;
    os << std::setprecision(precision);
    for (std::size_t i = 0; i < dim_; ++i) {
        os << "[";
        for (std::size_t j = 0; j < dim_; ++j) {
            const auto& z = (*this)(i, j);
            os << (j ? ", " : "") << z.real();
            if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
        }
        os << "]\n";
    }
    return os.str();
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "operator*");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

StateVector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
    if (v.size() != m.dim()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    StateVector out(v.size());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) out[i] += m(i, j) * v[j];
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double unitarity_residual(const ComplexMatrix& u) {
    return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.dim()));
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) { return u * rho * u.adjoint(); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
    if (bra.size() != ket.size()) throw std::invalid_argument("inner: vector length mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
    return s;
}

double norm(std::span<const Complex> v) { return std::sqrt(std::real(inner(v, v))); }

StateVector basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::out_of_range("basis index out of range");
    StateVector v(dim);
    v[index] = 1.0;
    return v;
}

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t n = a.dim() * b.dim();
    if (n > kMaxDim) throw std::invalid_argument("kron: result exceeds three qubits");
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            for (std::size_t k = 0; k < b.dim(); ++k) {
                for (std::size_t l = 0; l < b.dim(); ++l) out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
            }
        }
    }
    return out;
}

StateVector kron(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() * b.size() > kMaxDim) throw std::invalid_argument("kron: result exceeds three qubits");
    StateVector out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
    }
    return out;
}

std::string to_string(QubitLabel label) {
    switch (label) {
        case QubitLabel::A:
            return "A";
        case QubitLabel::B:
            return "B";
        case QubitLabel::An:
            return "An";
    }
    return "?";
}

ComplexMatrix embed(const ComplexMatrix& op, QubitLabel target, const QubitOrder& system) {
    if (op.dim() != 2) throw std::invalid_argument("embed: single-qubit operator must be 2x2");
    require_distinct(system);
    const std::size_t pos = position_of(target, system);
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (std::size_t i = 0; i < system.size(); ++i) out = kron(out, i == pos ? op : pauli::identity());
    return out;
}

ComplexMatrix embed(const ComplexMatrix& op, QubitLabel first, QubitLabel second, const QubitOrder& system) {
    if (op.dim() != 4) throw std::invalid_argument("embed: two-qubit operator must be 4x4");
    if (first == second) throw std::invalid_argument("embed: two-qubit operator needs distinct qubits");
    require_distinct(system);
    const std::size_t n = system.size();
    const std::size_t p1 = position_of(first, system);
    const std::size_t p2 = position_of(second, system);
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            bool spectators_match = true;
            for (std::size_t p = 0; p < n; ++p) {
                if (p != p1 && p != p2 && bit_of(r, p, n) != bit_of(c, p, n)) spectators_match = false;
            }
            if (!spectators_match) continue;
            const std::size_t lr = 2 * bit_of(r, p1, n) + bit_of(r, p2, n);
            const std::size_t lc = 2 * bit_of(c, p1, n) + bit_of(c, p2, n);
            out(r, c) = op(lr, lc);
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const QubitOrder& keep, const QubitOrder& system) {
    require_distinct(system);
    require_distinct(keep);
    const std::size_t n = system.size();
    if (rho.dim() != (std::size_t{1} << n)) throw std::invalid_argument("partial_trace: matrix does not match register");

    std::vector<std::size_t> kept;  // register positions, in system order
    std::vector<std::size_t> traced;
    for (std::size_t p = 0; p < n; ++p) {
        if (std::find(keep.begin(), keep.end(), system[p]) != keep.end()) {
            kept.push_back(p);
        } else {
            traced.push_back(p);
        }
    }
    if (kept.size() != keep.size()) throw std::invalid_argument("partial_trace: kept qubits are not a subset of the register");

    auto full_index = [&](std::size_t kept_bits, std::size_t traced_bits) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            idx |= ((kept_bits >> (kept.size() - 1 - i)) & 1U) << (n - 1 - kept[i]);
        }
        for (std::size_t i = 0; i < traced.size(); ++i) {
            idx |= ((traced_bits >> (traced.size() - 1 - i)) & 1U) << (n - 1 - traced[i]);
        }
        return idx;
    };

    const std::size_t out_dim = std::size_t{1} << kept.size();
    const std::size_t env_dim = std::size_t{1} << traced.size();
    ComplexMatrix out(out_dim);
    for (std::size_t r = 0; r < out_dim; ++r) {
        for (std::size_t c = 0; c < out_dim; ++c) {
            Complex s = 0.0;
            for (std::size_t t = 0; t < env_dim; ++t) s += rho(full_index(r, t), full_index(c, t));
            out(r, c) = s;
        }
    }
    return out;
}

ComplexMatrix reorder(const ComplexMatrix& m, const QubitOrder& from, const QubitOrder& to) {
    require_distinct(from);
    require_distinct(to);
    const std::size_t n = from.size();
    if (to.size() != n || m.dim() != (std::size_t{1} << n)) throw std::invalid_argument("reorder: register mismatch");
    std::vector<std::size_t> source_pos(n);
    for (std::size_t i = 0; i < n; ++i) source_pos[i] = position_of(to[i], from);

    auto map_index = [&](std::size_t to_index) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) idx |= bit_of(to_index, i, n) << (n - 1 - source_pos[i]);
        return idx;
    };
    ComplexMatrix out(m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) out(r, c) = m(map_index(r), map_index(c));
    }
    return out;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m, double hermitian_tol) {
    const double scale = std::max(1.0, m.max_abs());
    if (!m.is_hermitian(hermitian_tol * scale)) throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
    const std::size_t n = m.dim();

    // Symmetrize so the rotations act on an exactly Hermitian matrix.
    ComplexMatrix a = 0.5 * (m + m.adjoint());
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) s += std::norm(a(i, j));
            }
        }
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_norm() > 1e-15 * scale; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq < 1e-300) continue;
                // Phase-rotate column q so a(p,q) becomes real, then apply a real Jacobi rotation.
                const Complex phase = a(p, q) / apq;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // W = D J with D = diag(.., conj(phase) at q, ..), J the real rotation in (p,q).
                const Complex wpp = c;
                const Complex wpq = s;
                const Complex wqp = -s * std::conj(phase);
                const Complex wqq = c * std::conj(phase);

                // a <- a W
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * wpp + akq * wqp;
                    a(k, q) = akp * wpq + akq * wqq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * wpp + vkq * wqp;
                    v(k, q) = vkp * wpq + vkq * wqq;
                }
                // a <- W^dagger a
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(wpp) * apk + std::conj(wqp) * aqk;
                    a(q, k) = std::conj(wpq) * apk + std::conj(wqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

StateVector column(const ComplexMatrix& m, std::size_t k) {
    StateVector v(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) v[i] = m(i, k);
    return v;
}

double expectation(const ComplexMatrix& rho, const ComplexMatrix& obs, double tol) {
    require_same_dim(rho, obs, "expectation");
    Complex s = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        for (std::size_t k = 0; k < rho.dim(); ++k) s += obs(i, k) * rho(k, i);
    }
    if (std::abs(s.imag()) > tol * std::max(1.0, std::abs(s.real()))) {
        throw std::domain_error("expectation: imaginary part " + std::to_string(s.imag()) +
                                " exceeds tolerance; observable is not Hermitian");
    }
    return s.real();
}

double expectation(std::span<const Complex> psi, const ComplexMatrix& obs, double tol) {
    const StateVector o_psi = obs * psi;
    const Complex s = inner(psi, o_psi);
    if (std::abs(s.imag()) > tol * std::max(1.0, std::abs(s.real()))) {
        throw std::domain_error("expectation: imaginary part exceeds tolerance; observable is not Hermitian");
    }
    return s.real();
}

}  // namespace qet

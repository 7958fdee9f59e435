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

#ifndef QET_OPERATOR_HPP
#define QET_OPERATOR_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qet {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

/// Numerical tolerances shared by the validity predicates.
struct Tolerances {
    double validity = 1e-10;
    double eigen_residual = 1e-9;
    double state_equality = 1e-8;
};

inline constexpr Tolerances kDefaultTolerances{};

/// Dense square complex matrix over at most three qubits.
///
/// Entries are stored row-major over the computational basis |q_{n-1}...q_0>,
/// i.e. the first qubit of a register is the most significant bit of the
/// index. A dimension of 1 is admitted only as the scalar left over when every
/// qubit is traced out.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const Complex> values);
    static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);
    /// |psi><psi|
    static ComplexMatrix projector(std::span<const Complex> psi);

    std::size_t dim() const { return dim_; }
    std::size_t num_qubits() const;

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    std::span<const Complex> data() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;
    /// Largest entry magnitude.
    double max_abs() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    bool is_hermitian(double tol = kDefaultTolerances.validity) const;
    bool is_unitary(double tol = kDefaultTolerances.validity) const;
    /// Hermitian, unit trace and positive semidefinite (smallest eigenvalue >= -tol).
    bool is_density_matrix(double tol = 1e-9) const;

    std::string to_string(int precision = 6) const;

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
StateVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// max_{ij} |a_ij - b_ij|; throws on dimension mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// ||U^dagger U - 1||_max
double unitarity_residual(const ComplexMatrix& u);
/// U rho U^dagger
ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho);
/// AB - BA
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);
double norm(std::span<const Complex> v);
StateVector basis_state(std::size_t dim, std::size_t index);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Kronecker product with `a` as the more significant factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
StateVector kron(std::span<const Complex> a, std::span<const Complex> b);

/// Named subsystems of the protocol.
enum class QubitLabel { A, B, An };

using QubitOrder = std::vector<QubitLabel>;

/// Three-qubit register, in the order the carbons C1, C2, C3 carry B, An, A.
inline const QubitOrder kCircuitRegister{QubitLabel::B, QubitLabel::An, QubitLabel::A};
/// Two-qubit register of the model Hamiltonian.
inline const QubitOrder kPairRegister{QubitLabel::A, QubitLabel::B};

std::string to_string(QubitLabel label);

/// Places `op` on `target` and identities elsewhere; `system` lists qubits from
/// most to least significant.
ComplexMatrix embed(const ComplexMatrix& op, QubitLabel target, const QubitOrder& system);
/// Two-qubit variant; `op` acts on `first` (more significant) and `second`.
ComplexMatrix embed(const ComplexMatrix& op, QubitLabel first, QubitLabel second, const QubitOrder& system);

/// Reduced density matrix on `keep`, returned in the order `keep` appears in `system`.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const QubitOrder& keep, const QubitOrder& system);

/// Relabels the tensor factors of `m` from register `from` to register `to`.
ComplexMatrix reorder(const ComplexMatrix& m, const QubitOrder& from, const QubitOrder& to);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
EigenDecomposition hermitian_eig(const ComplexMatrix& m, double hermitian_tol = kDefaultTolerances.validity);

/// Column `k` of `m`.
StateVector column(const ComplexMatrix& m, std::size_t k);

/// Tr(obs rho); throws if the imaginary part exceeds `tol`.
double expectation(const ComplexMatrix& rho, const ComplexMatrix& obs, double tol = kDefaultTolerances.validity);
/// <psi|obs|psi>
double expectation(std::span<const Complex> psi, const ComplexMatrix& obs, double tol = kDefaultTolerances.validity);

}  // namespace qet

#endif  // QET_OPERATOR_HPP

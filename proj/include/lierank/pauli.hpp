#pragma once

#include "lierank/common.hpp"

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lierank {

// Phase-free n-qubit Pauli word in symplectic form. Bit j of x is set iff
// qubit j carries X or Y; bit j of z iff it carries Z or Y.
struct PauliWord {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    friend auto operator<=>(const PauliWord&, const PauliWord&) = default;

    bool is_identity() const { return x == 0 && z == 0; }

    bool commutes_with(const PauliWord& other) const {
        auto sym = std::popcount(x & other.z) + std::popcount(z & other.x);
        return (sym & 1) == 0;
    }
};

// i-exponent g such that B(a) B(b) = i^g B(a.x^b.x, a.z^b.z), where B(w) is
// the Hermitian word with Y = (x=1, z=1).
int product_phase_exp(const PauliWord& a, const PauliWord& b);

// One n-qubit Pauli string: i^phase_exp times the bare Hermitian word.
struct PauliString {
    int n_qubits = 1;
    PauliWord word;
    int phase_exp = 0; // mod 4

    static PauliString identity(int n);

    // Parses "XZIY" with the left character acting on qubit 0; phase_exp 0.
    static PauliString from_text(std::string_view text);

    // Bare word as text, phases not encoded.
    std::string text() const;

    bool commutes_with(const PauliString& other) const { return word.commutes_with(other.word); }
};

// Group product a*b with accumulated phase. Throws SizeMismatchError.
PauliString multiply(const PauliString& a, const PauliString& b);

// Rank of the word under I < X < Y < Z per qubit, qubit 0 most significant.
// Used wherever a reproducible lexicographic order on Pauli words is needed.
unsigned __int128 word_text_rank(const PauliWord& w, int n_qubits);

std::string word_to_text(const PauliWord& w, int n_qubits);

// Real-coefficient linear combination of phase-free Pauli words. Terms are
// kept sorted by (x, z) and pruned at kZeroTol.
class PauliOperator {
public:
    using Term = std::pair<PauliWord, double>;

    PauliOperator() = default;
    explicit PauliOperator(int n_qubits);

    static PauliOperator from_string(const PauliString& s, double coeff = 1.0);
    static PauliOperator from_terms(int n_qubits, std::span<const std::pair<PauliString, double>> terms);

    int n_qubits() const { return n_qubits_; }
    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    double coeff(const PauliWord& w) const;

    // Accumulates coeff * i^phase_exp * word. The folded coefficient must be
    // real, so phase_exp must be even; odd phases throw NumericalError.
    void add(const PauliString& s, double coeff);
    void add_word(const PauliWord& w, double coeff);

    PauliOperator& operator+=(const PauliOperator& other);
    PauliOperator& operator*=(double scale);

    // this += scale * other
    void axpy(double scale, const PauliOperator& other);

    double norm() const; // Hilbert-Schmidt norm, sqrt(hs_inner(a, a))

    void prune(double tol = kZeroTol);

    friend PauliOperator operator+(PauliOperator a, const PauliOperator& b) { return a += b; }
    friend PauliOperator operator*(double s, PauliOperator a) { return a *= s; }
    friend bool operator==(const PauliOperator&, const PauliOperator&) = default;

private:
    int n_qubits_ = 1;
    std::vector<Term> terms_;

    void check_same_size(const PauliOperator& other) const;
    friend PauliOperator commutator(const PauliOperator&, const PauliOperator&);
    friend double hs_inner(const PauliOperator&, const PauliOperator&);
};

// Stored commutator -i(ab - ba), Hermitian whenever a and b are; commuting
// inputs return the empty operator. Throws SizeMismatchError.
PauliOperator commutator(const PauliOperator& a, const PauliOperator& b);

// Tr(a^dag b) / 2^n: the dot product of coefficient vectors.
double hs_inner(const PauliOperator& a, const PauliOperator& b);

// Deterministic total order on operators: lexicographic on the term word
// sequence under word_text_rank, coefficients as tie-break.
bool operator_text_less(const PauliOperator& a, const PauliOperator& b);

} // namespace lierank

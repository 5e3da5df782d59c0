#include "lierank/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace lierank {

int product_phase_exp(const PauliWord& a, const PauliWord& b) {
    // Per-qubit exponent x2*z1*(1 + 2*z2 + 2*x1) - x1*z2*(1 + 2*z1 + 2*x2),
    // summed mod 4 via popcounts.
    int g = std::popcount(b.x & a.z) + 2 * std::popcount(b.x & a.z & b.z) +
            2 * std::popcount(b.x & a.z & a.x);
    g -= std::popcount(a.x & b.z) + 2 * std::popcount(a.x & b.z & a.z) +
         2 * std::popcount(a.x & b.z & b.x);
    return ((g % 4) + 4) % 4;
}

PauliString PauliString::identity(int n) {
    if (n < 1 || n > kMaxQubits)
        throw CapacityError("qubit count out of range: " + std::to_string(n));
    return PauliString{n, PauliWord{}, 0};
}

PauliString PauliString::from_text(std::string_view text) {
    if (text.empty() || text.size() > static_cast<std::size_t>(kMaxQubits))
        throw CapacityError("Pauli text length out of range: " + std::to_string(text.size()));
    PauliString s;
    s.n_qubits = static_cast<int>(text.size());
    for (std::size_t q = 0; q < text.size(); ++q) {
        switch (text[q]) {
        case 'I':
            break;
        case 'X':
            s.word.x |= std::uint64_t{1} << q;
            break;
        case 'Y':
            s.word.x |= std::uint64_t{1} << q;
            s.word.z |= std::uint64_t{1} << q;
            break;
        case 'Z':
            s.word.z |= std::uint64_t{1} << q;
            break;
        default:
            throw std::invalid_argument(std::string("invalid Pauli character '") + text[q] + "'");
        }
    }
    return s;
}

std::string word_to_text(const PauliWord& w, int n_qubits) {
    std::string out;
    out.reserve(static_cast<std::size_t>(n_qubits));
    for (int q = 0; q < n_qubits; ++q) {
        bool xb = (w.x >> q) & 1, zb = (w.z >> q) & 1;
        out.push_back(xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I'));
    }
    return out;
}

std::string PauliString::text() const { return word_to_text(word, n_qubits); }

PauliString multiply(const PauliString& a, const PauliString& b) {
    if (a.n_qubits != b.n_qubits)
        throw SizeMismatchError("Pauli product on mismatched qubit counts");
    PauliString out;
    out.n_qubits = a.n_qubits;
    out.word = PauliWord{a.word.x ^ b.word.x, a.word.z ^ b.word.z};
    out.phase_exp = (a.phase_exp + b.phase_exp + product_phase_exp(a.word, b.word)) & 3;
    return out;
}

unsigned __int128 word_text_rank(const PauliWord& w, int n_qubits) {
    unsigned __int128 key = 0;
    for (int q = 0; q < n_qubits; ++q) {
        bool xb = (w.x >> q) & 1, zb = (w.z >> q) & 1;
        unsigned rank = xb ? (zb ? 2u : 1u) : (zb ? 3u : 0u); // I < X < Y < Z
        key = (key << 2) | rank;
    }
    return key;
}

PauliOperator::PauliOperator(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw CapacityError("qubit count out of range: " + std::to_string(n_qubits));
}

PauliOperator PauliOperator::from_string(const PauliString& s, double coeff) {
    PauliOperator op(s.n_qubits);
    op.add(s, coeff);
    return op;
}

PauliOperator PauliOperator::from_terms(int n_qubits,
                                        std::span<const std::pair<PauliString, double>> terms) {
    PauliOperator op(n_qubits);
    for (const auto& [s, c] : terms) {
        if (s.n_qubits != n_qubits)
            throw SizeMismatchError("term qubit count differs from operator");
        op.add(s, c);
    }
    return op;
}

double PauliOperator::coeff(const PauliWord& w) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                               [](const Term& t, const PauliWord& k) { return t.first < k; });
    return (it != terms_.end() && it->first == w) ? it->second : 0.0;
}

void PauliOperator::add(const PauliString& s, double coeff) {
    if (s.n_qubits != n_qubits_)
        throw SizeMismatchError("string qubit count differs from operator");
    switch (s.phase_exp & 3) {
    case 0:
        add_word(s.word, coeff);
        break;
    case 2:
        add_word(s.word, -coeff);
        break;
    default:
        throw NumericalError("odd phase exponent would make the coefficient imaginary");
    }
}

void PauliOperator::add_word(const PauliWord& w, double coeff) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                               [](const Term& t, const PauliWord& k) { return t.first < k; });
    if (it != terms_.end() && it->first == w) {
        it->second += coeff;
        if (std::abs(it->second) < kZeroTol)
            terms_.erase(it);
    } else if (std::abs(coeff) >= kZeroTol) {
        terms_.insert(it, {w, coeff});
    }
}

void PauliOperator::check_same_size(const PauliOperator& other) const {
    if (n_qubits_ != other.n_qubits_)
        throw SizeMismatchError("operator qubit counts differ");
}

PauliOperator& PauliOperator::operator+=(const PauliOperator& other) {
    axpy(1.0, other);
    return *this;
}

PauliOperator& PauliOperator::operator*=(double scale) {
    if (scale == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, c] : terms_)
        c *= scale;
    prune();
    return *this;
}

void PauliOperator::axpy(double scale, const PauliOperator& other) {
    check_same_size(other);
    if (scale == 0.0 || other.terms_.empty())
        return;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() && b != other.terms_.end()) {
        if (a->first < b->first) {
            merged.push_back(*a++);
        } else if (b->first < a->first) {
            merged.emplace_back(b->first, scale * b->second);
            ++b;
        } else {
            double c = a->second + scale * b->second;
            if (std::abs(c) >= kZeroTol)
                merged.emplace_back(a->first, c);
            ++a;
            ++b;
        }
    }
    merged.insert(merged.end(), a, terms_.end());
    for (; b != other.terms_.end(); ++b) {
        if (std::abs(scale * b->second) >= kZeroTol)
            merged.emplace_back(b->first, scale * b->second);
    }
    terms_ = std::move(merged);
}

double PauliOperator::norm() const { return std::sqrt(hs_inner(*this, *this)); }

void PauliOperator::prune(double tol) {
    std::erase_if(terms_, [tol](const Term& t) { return std::abs(t.second) < tol; });
}

PauliOperator commutator(const PauliOperator& a, const PauliOperator& b) {
    a.check_same_size(b);
    PauliOperator out(a.n_qubits_);
    // For anticommuting Hermitian words P, Q: -i(PQ - QP) = -2i i^g R with
    // g odd, so the contribution is +-2 R. Commuting pairs vanish.
    std::vector<PauliOperator::Term> scratch;
    scratch.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [wa, ca] : a.terms_) {
        for (const auto& [wb, cb] : b.terms_) {
            if (wa.commutes_with(wb))
                continue;
            int g = product_phase_exp(wa, wb);
            double sign = (g == 1) ? 2.0 : -2.0;
            scratch.emplace_back(PauliWord{wa.x ^ wb.x, wa.z ^ wb.z}, sign * ca * cb);
        }
    }
    std::sort(scratch.begin(), scratch.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    auto& terms = out.terms_;
    for (const auto& [w, c] : scratch) {
        if (!terms.empty() && terms.back().first == w)
            terms.back().second += c;
        else
            terms.emplace_back(w, c);
    }
    out.prune();
    return out;
}

double hs_inner(const PauliOperator& a, const PauliOperator& b) {
    a.check_same_size(b);
    double acc = 0.0;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() && j != b.terms_.end()) {
        if (i->first < j->first)
            ++i;
        else if (j->first < i->first)
            ++j;
        else
            acc += (i++)->second * (j++)->second;
    }
    return acc;
}

bool operator_text_less(const PauliOperator& a, const PauliOperator& b) {
    auto ta = a.terms();
    auto tb = b.terms();
    int n = a.n_qubits();
    std::size_t m = std::min(ta.size(), tb.size());
    for (std::size_t i = 0; i < m; ++i) {
        auto ka = word_text_rank(ta[i].first, n);
        auto kb = word_text_rank(tb[i].first, n);
        if (ka != kb)
            return ka < kb;
    }
    if (ta.size() != tb.size())
        return ta.size() < tb.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (ta[i].second != tb[i].second)
            return ta[i].second < tb[i].second;
    }
    return false;
}

} // namespace lierank

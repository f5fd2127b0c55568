#pragma once

#include "vbf/gf2n.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vbf {

/// Largest n accepted for 2-adic work without opting in.
inline constexpr int kMaxPadicDegree = 12;

/// Element of (Z/2^kappa)[x] / (lift of the field modulus), n coefficients.
using PadicElem = std::vector<std::uint64_t>;

class PadicContext {
public:
    /// kappa in [2, 62]; throws UsageError otherwise.
    PadicContext(FieldPtr base, int kappa);

    const FieldContext& base() const { return *base_; }
    int kappa() const { return kappa_; }
    int n() const { return base_->n(); }

    PadicElem zero() const { return PadicElem(n(), 0); }
    PadicElem from_int(std::int64_t v) const;
    /// Coefficients of a read as 0/1 integers.
    PadicElem naive_lift(Elem a) const;
    /// Coefficientwise reduction mod 2.
    Elem reduce(const PadicElem& x) const;

    PadicElem add(const PadicElem& x, const PadicElem& y) const;
    PadicElem sub(const PadicElem& x, const PadicElem& y) const;
    PadicElem mul(const PadicElem& x, const PadicElem& y) const;
    PadicElem scale(const PadicElem& x, std::int64_t c) const;
    PadicElem pow(PadicElem x, std::uint64_t e) const;
    bool is_zero(const PadicElem& x) const;
    /// min v2 over the coefficients; nullopt for 0 mod 2^kappa.
    std::optional<int> valuation(const PadicElem& x) const;

    /// omega(a) by iterating y -> y^{2^n} from the naive lift until it stops moving.
    PadicElem teichmuller(Elem a) const;
    /// omega(g)^e for the fixed primitive g, e reduced mod N.
    const PadicElem& omega_primitive_pow(std::uint64_t e) const { return omega_pows_[e % base_->order()]; }
    /// omega(a) via the table above (a != 0), 0 for a = 0.
    PadicElem omega(Elem a) const;

    std::string to_string(const PadicElem& x) const;

private:
    std::uint64_t mask(std::uint64_t v) const { return v & mask_; }

    FieldPtr base_;
    int kappa_;
    std::uint64_t mask_;
    std::vector<std::uint64_t> reduction_;  // x^n = sum_i reduction_[i] x^i
    std::vector<PadicElem> omega_pows_;
};

struct GaussSumValue {
    std::uint64_t j = 0;
    PadicElem value;
    std::optional<int> valuation;
    /// kappa >= wt2(j) + 2, so the valuation is decided.
    bool conclusive = false;
};

/// G(omega^{-j}) = sum_{x != 0} (-1)^{Tr(x)} omega(x)^{-j}
GaussSumValue gauss_sum(const PadicContext& P, std::int64_t j);

struct PadicReport {
    int n = 0, kappa = 0;
    std::vector<GaussSumValue> sums;              // indexed by j
    std::uint64_t congruence_failures = 0;        // G(omega^{-i}) vs 2^{wt2(i)} mod 2^{wt2(i)+1}
    std::uint64_t valuation_mismatches = 0;       // v2(G) != wt2(i) where conclusive
    std::uint64_t product_failures = 0;           // G(omega^{-i}) G(omega^{i}) vs 2^n
    std::uint64_t fourier_failures = 0;           // N psi(x) vs sum_j G(omega^{-j}) omega^j(x)
    std::uint64_t teichmuller_failures = 0;       // omega(a)^{2^n} = omega(a), omega(a) = a mod 2
    bool inconclusive = false;                    // kappa < n + 2
    bool holds() const {
        return congruence_failures == 0 && valuation_mismatches == 0 && product_failures == 0 && fourier_failures == 0 &&
               teichmuller_failures == 0;
    }
};

PadicReport verify_stickelberger_and_fourier(const PadicContext& P, unsigned jobs = 0);

}  // namespace vbf

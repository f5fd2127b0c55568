#include "vbf/gf2n.hpp"

#include "vbf/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

namespace vbf {

namespace {

Elem clmul_reduce_raw(Elem a, Elem b, int n, std::uint64_t modulus) {
    std::uint64_t r = 0, x = a;
    for (std::uint32_t y = b; y; y >>= 1, x <<= 1)
        if (y & 1u) r ^= x;
    for (int i = 2 * n - 2; i >= n; --i)
        if ((r >> i) & 1u) r ^= modulus << (i - n);
    return static_cast<Elem>(r);
}

}  // namespace

FieldContext::FieldContext(int n, Gf2Poly modulus) : n_(n), modulus_(modulus) {
    if (n < kMinDegree || n > kMaxDegree)
        throw UsageError("extension degree n=" + std::to_string(n) + " outside [2, 30]");
    if (modulus.degree() != n)
        throw ConstructionError("modulus " + modulus.to_string() + " does not have degree " + std::to_string(n));
    if (!modulus.is_irreducible()) throw ConstructionError("modulus " + modulus.to_string() + " is reducible");
    order_ = (std::uint32_t{1} << n) - 1;

    // Trace of each basis element x^i, by summing the Frobenius orbit.
    for (int i = 0; i < n; ++i) {
        Elem v = Elem{1} << i, acc = 0;
        for (int k = 0; k < n; ++k) {
            acc ^= v;
            v = clmul_reduce(v, v);
        }
        if (acc & 1u) trace_mask_ |= Elem{1} << i;
    }
    trace_dual_basis_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Elem v = 0;
        for (int i = 0; i < n; ++i)
            if (trace(clmul_reduce(Elem{1} << i, Elem{1} << j))) v |= Elem{1} << i;
        trace_dual_basis_[static_cast<std::size_t>(j)] = v;
    }

    const auto group_primes = prime_factors(order_);
    auto slow_pow = [&](Elem x, std::uint64_t e) {
        Elem r = 1;
        while (e) {
            if (e & 1u) r = clmul_reduce(r, x);
            x = clmul_reduce(x, x);
            e >>= 1;
        }
        return r;
    };
    for (Elem g = 2; g <= order_; ++g) {
        bool ok = true;
        for (auto p : group_primes)
            if (slow_pow(g, order_ / p) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            primitive_ = g;
            break;
        }
    }

    if (n <= kMaxTableDegree) {
        exp_.resize(2 * static_cast<std::size_t>(order_));
        log_.assign(static_cast<std::size_t>(order_) + 1, 0);
        Elem v = 1;
        for (std::uint32_t k = 0; k < order_; ++k) {
            exp_[k] = v;
            exp_[k + order_] = v;
            log_[v] = k;
            v = clmul_reduce(v, primitive_);
        }
        trace_dual_table_.resize(static_cast<std::size_t>(order_) + 1);
        trace_dual_table_[0] = 0;
        for (std::uint32_t b = 1; b <= order_; ++b) {
            const int low = __builtin_ctz(b);
            trace_dual_table_[b] = trace_dual_table_[b & (b - 1)] ^ trace_dual_basis_[static_cast<std::size_t>(low)];
        }
    }
}

Elem FieldContext::clmul_reduce(Elem a, Elem b) const { return clmul_reduce_raw(a, b, n_, modulus_.bits()); }

Elem FieldContext::pow(Elem x, std::int64_t e) const {
    if (x == 0) {
        if (e < 0) throw DomainError("zero raised to a negative power");
        return e == 0 ? 1 : 0;
    }
    std::int64_t r = e % static_cast<std::int64_t>(order_);
    if (r < 0) r += order_;
    auto ue = static_cast<std::uint64_t>(r);
    if (has_tables()) return exp_[static_cast<std::uint64_t>(log_[x]) * ue % order_];
    Elem acc = 1;
    while (ue) {
        if (ue & 1u) acc = mul(acc, x);
        x = mul(x, x);
        ue >>= 1;
    }
    return acc;
}

Elem FieldContext::inv(Elem x) const {
    if (x == 0) throw DomainError("zero has no inverse");
    return pow(x, -1);
}

Elem FieldContext::frobenius(Elem x, int k) const {
    k %= n_;
    if (k < 0) k += n_;
    for (int i = 0; i < k; ++i) x = mul(x, x);
    return x;
}

Elem FieldContext::trace_dual(Elem b) const {
    if (!trace_dual_table_.empty()) return trace_dual_table_[b];
    Elem v = 0;
    for (Elem r = b; r; r &= r - 1) v ^= trace_dual_basis_[static_cast<std::size_t>(__builtin_ctz(r))];
    return v;
}

Elem FieldContext::primitive_pow(std::int64_t k) const {
    std::int64_t r = k % static_cast<std::int64_t>(order_);
    if (r < 0) r += order_;
    if (has_tables()) return exp_[static_cast<std::size_t>(r)];
    return pow(primitive_, r);
}

std::uint32_t FieldContext::log(Elem x) const {
    if (x == 0) throw DomainError("log of zero");
    if (has_tables()) return log_[x];
    // Baby-step giant-step would be the next step; the large-n paths never need logs.
    Elem v = 1;
    for (std::uint32_t k = 0; k < order_; ++k) {
        if (v == x) return k;
        v = mul(v, primitive_);
    }
    throw DomainError("element outside the field");
}

std::vector<Elem> FieldContext::subfield_elements(int d) const {
    if (d <= 0 || n_ % d != 0) throw UsageError("subfield degree must divide n");
    std::vector<Elem> out{0};
    // F_{2^d}^* is generated by g^((2^n-1)/(2^d-1)).
    const std::uint32_t sub_order = (std::uint32_t{1} << d) - 1;
    const Elem g = pow(primitive_, order_ / sub_order);
    Elem v = 1;
    for (std::uint32_t k = 0; k < sub_order; ++k) {
        out.push_back(v);
        v = mul(v, g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool FieldContext::is_field_generator(Elem g) const {
    for (auto p : prime_factors(static_cast<std::uint64_t>(n_)))
        if (in_subfield(g, n_ / static_cast<int>(p))) return false;
    return true;
}

FieldPtr FieldContext::corrupted_copy_for_testing() const {
    auto copy = std::make_shared<FieldContext>(*this);
    if (copy->has_tables()) {
        // Swap two antilog entries: multiplication stops being associative.
        std::swap(copy->exp_[1], copy->exp_[2]);
        std::swap(copy->exp_[1 + order_], copy->exp_[2 + order_]);
    } else {
        copy->trace_mask_ ^= 1u;
    }
    return copy;
}

FieldPtr make_field(int n) {
    if (n < kMinDegree || n > kMaxDegree)
        throw UsageError("extension degree n=" + std::to_string(n) + " outside [2, 30]");
    return std::make_shared<const FieldContext>(n, default_modulus(n));
}

FieldPtr make_field(int n, Gf2Poly modulus) { return std::make_shared<const FieldContext>(n, modulus); }

std::map<int, Gf2Poly> parse_modulus_registry(std::string_view text) {
    std::map<int, Gf2Poly> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        int n = 0;
        unsigned long long bits = 0;
        if (std::sscanf(line.c_str(), "n=%d modulus=0x%llx", &n, &bits) != 2)
            throw UsageError("malformed modulus registry line: " + line);
        out[n] = Gf2Poly{bits};
    }
    return out;
}

Gf2Poly default_modulus(int n) {
    static const auto registry = parse_modulus_registry(builtin_modulus_registry());
    auto it = registry.find(n);
    if (it == registry.end()) throw UsageError("no registry modulus for n=" + std::to_string(n));
    return it->second;
}

std::string render_modulus_registry(int lo, int hi) {
    std::string out;
    for (int n = lo; n <= hi; ++n) out += "n=" + std::to_string(n) + " modulus=" + least_irreducible(n).to_hex() + "\n";
    return out;
}

FieldIsomorphism::FieldIsomorphism(const FieldContext& from, const FieldContext& to) {
    if (from.n() != to.n()) throw UsageError("isomorphism requires equal degrees");
    const Gf2Poly f = from.modulus();
    Elem root = 0;
    bool found = false;
    for (Elem b = 0; b <= to.order() && !found; ++b) {
        // Horner evaluation of f at b inside the target field.
        Elem acc = 0;
        for (int i = f.degree(); i >= 0; --i) acc = to.mul(acc, b) ^ (f.coeff(i) ? 1u : 0u);
        if (acc == 0) {
            root = b;
            found = true;
        }
    }
    if (!found) throw ConstructionError("source modulus has no root in the target field");
    Elem p = 1;
    for (int i = 0; i < from.n(); ++i) {
        basis_images_.push_back(p);
        p = to.mul(p, root);
    }
}

Elem FieldIsomorphism::operator()(Elem x) const {
    Elem r = 0;
    for (Elem v = x; v; v &= v - 1) r ^= basis_images_[static_cast<std::size_t>(__builtin_ctz(v))];
    return r;
}

}  // namespace vbf

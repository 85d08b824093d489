#include "sunflower/bounds.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <regex>
#include <sstream>

#include "sunflower/error.hpp"

namespace sunflower {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kProbeLimit = std::uint64_t{1} << 48;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kSaturated / a) return kSaturated;
    return a * b;
}

std::uint64_t parse_u64(const std::string& text, const std::string& spec) {
    std::uint64_t v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty())
        throw ParseError("bad integer '" + text + "' in map spec '" + spec + "'");
    return v;
}

std::vector<std::uint64_t> parse_list(const std::string& text, const std::string& spec) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_u64(item, spec));
    return out;
}

}  // namespace

BigInt factorial(std::size_t n) {
    BigInt r = 1;
    for (std::size_t i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt seqsize(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= (n - i);
    return r;
}

BetaFn::BetaFn(std::vector<std::uint64_t> values) : values_(std::move(values)) {
    if (values_.empty()) throw PreconditionError("beta needs at least one value");
    if (values_.front() < 3) throw PreconditionError("beta(1) must be at least 3");
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] <= values_[i - 1])
            throw PreconditionError("beta must be strictly increasing");
}

std::uint64_t BetaFn::at(std::size_t m) const {
    if (m == 0 || m > values_.size())
        throw HorizonExceeded("beta(" + std::to_string(m) + ") is outside the horizon " +
                              std::to_string(values_.size()));
    return values_[m - 1];
}

BigInt gamma(const BetaFn& beta, std::size_t m) {
    if (m > beta.horizon())
        throw HorizonExceeded("gamma(" + std::to_string(m) + ") needs beta beyond the horizon");
    BigInt total = 0;
    for (std::size_t j = 1; j <= m; ++j) total += seqsize(m, j) * beta.at(j);
    return total;
}

std::size_t gamma_circ(const BetaFn& beta, const BigInt& t) {
    for (std::size_t m = 0; m <= beta.horizon(); ++m)
        if (gamma(beta, m) >= t) return m;
    throw HorizonExceeded("target " + t.str() + " exceeds gamma at the horizon");
}

MonotoneMap MonotoneMap::affine(std::uint64_t a, std::uint64_t b) {
    MonotoneMap m;
    m.kind_ = Kind::Poly;
    m.params_ = {b, a};
    m.spec_ = "affine:" + std::to_string(a) + "," + std::to_string(b);
    m.check();
    return m;
}

MonotoneMap MonotoneMap::step(std::uint64_t base, std::uint64_t width, std::uint64_t rise) {
    MonotoneMap m;
    m.kind_ = Kind::Step;
    m.params_ = {base, width, rise};
    m.spec_ = "step:" + std::to_string(base) + "," + std::to_string(width) + "," +
              std::to_string(rise);
    m.check();
    return m;
}

MonotoneMap MonotoneMap::table(std::vector<std::uint64_t> values, std::uint64_t slope) {
    MonotoneMap m;
    m.kind_ = Kind::Table;
    m.params_ = std::move(values);
    m.slope_ = slope;
    std::string spec = "table:";
    for (std::size_t i = 0; i < m.params_.size(); ++i)
        spec += (i ? "," : "") + std::to_string(m.params_[i]);
    m.spec_ = spec + ";slope=" + std::to_string(slope);
    m.check();
    return m;
}

MonotoneMap MonotoneMap::parse(const std::string& spec) {
    static const std::regex shorthand(R"(^\s*(\d*)k\s*\+\s*(\d+)\s*$)");
    std::smatch match;
    if (std::regex_match(spec, match, shorthand)) {
        std::uint64_t a = match[1].length() ? parse_u64(match[1].str(), spec) : 1;
        auto m = affine(a, parse_u64(match[2].str(), spec));
        m.spec_ = spec;
        return m;
    }
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError("unrecognised map spec '" + spec + "'");
    std::string kind = spec.substr(0, colon);
    std::string body = spec.substr(colon + 1);
    if (kind == "affine") {
        auto p = parse_list(body, spec);
        if (p.size() != 2) throw ParseError("affine takes a,b: '" + spec + "'");
        return affine(p[0], p[1]);
    }
    if (kind == "poly") {
        MonotoneMap m;
        m.kind_ = Kind::Poly;
        m.params_ = parse_list(body, spec);
        m.spec_ = spec;
        m.check();
        return m;
    }
    if (kind == "step") {
        auto p = parse_list(body, spec);
        if (p.size() != 3) throw ParseError("step takes base,width,rise: '" + spec + "'");
        return step(p[0], p[1], p[2]);
    }
    if (kind == "table") {
        auto semi = body.find(";slope=");
        if (semi == std::string::npos)
            throw ParseError("table needs ';slope=<s>' to define its tail: '" + spec + "'");
        return table(parse_list(body.substr(0, semi), spec),
                     parse_u64(body.substr(semi + 7), spec));
    }
    throw ParseError("unknown map kind '" + kind + "'");
}

void MonotoneMap::check() const {
    switch (kind_) {
        case Kind::Poly: {
            std::size_t degree = params_.size();
            while (degree > 0 && params_[degree - 1] == 0) --degree;
            if (degree < 2)
                throw PreconditionError("map '" + spec_ + "' is constant and does not diverge");
            break;
        }
        case Kind::Step:
            if (params_[1] == 0 || params_[2] == 0)
                throw PreconditionError("step map '" + spec_ + "' needs positive width and rise");
            break;
        case Kind::Table:
            if (params_.empty()) throw PreconditionError("table map needs values");
            if (!std::is_sorted(params_.begin(), params_.end()))
                throw PreconditionError("table map '" + spec_ + "' is not nondecreasing");
            if (slope_ == 0)
                throw PreconditionError("table map '" + spec_ +
                                        "' is flat past its last entry and does not diverge");
            break;
    }
}

std::uint64_t MonotoneMap::operator()(std::uint64_t k) const {
    switch (kind_) {
        case Kind::Poly: {
            std::uint64_t acc = 0;
            for (std::size_t i = params_.size(); i-- > 0;) acc = sat_add(sat_mul(acc, k), params_[i]);
            return acc;
        }
        case Kind::Step:
            return sat_add(params_[0], sat_mul(params_[2], k / params_[1]));
        case Kind::Table:
            if (k < params_.size()) return params_[k];
            return sat_add(params_.back(), sat_mul(slope_, k - params_.size() + 1));
    }
    return 0;
}

std::uint64_t alpha_circ(const MonotoneMap& alpha, const BigInt& t) {
    auto reaches = [&](std::uint64_t k) { return BigInt(alpha(k)) >= t; };
    if (reaches(0)) return 0;
    std::uint64_t hi = 1;
    while (!reaches(hi)) {
        if (hi >= kProbeLimit)
            throw HorizonExceeded("alpha does not reach " + t.str() + " within the probing horizon");
        hi *= 2;
    }
    std::uint64_t lo = hi / 2;  // alpha(lo) < t
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (reaches(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

BigInt er_bound(std::size_t n, std::size_t k) {
    if (n < 1) throw PreconditionError("er_bound needs n >= 1");
    return factorial(k) * boost::multiprecision::pow(BigInt(n - 1), static_cast<unsigned>(k));
}

BigInt thm_bound(const MonotoneMap& alpha, std::size_t n, std::uint64_t k) {
    if (n < 1) throw PreconditionError("thm_bound needs n >= 1");
    std::uint64_t a = alpha(k);
    if (a > std::numeric_limits<unsigned>::max())
        throw CapExceeded("alpha(k) too large to use as an exponent");
    return BigInt(a) * boost::multiprecision::pow(BigInt(n - 1), static_cast<unsigned>(a));
}

BigInt derived_sf_bound(const BetaFn& beta, std::size_t n, std::uint64_t k) {
    if (n < 1) throw PreconditionError("derived_sf_bound needs n >= 1");
    std::size_t m = gamma_circ(beta, BigInt(k));
    BigInt mf = factorial(m);
    if (mf > std::numeric_limits<unsigned>::max())
        throw CapExceeded("m! too large to use as an exponent");
    return mf * boost::multiprecision::pow(BigInt(n - 1), mf.convert_to<unsigned>());
}

BetaSynthesis synth_beta(const MonotoneMap& alpha, std::uint64_t checked_k) {
    if (alpha(0) < 3) throw PreconditionError("alpha(0) must be at least 3");
    std::vector<std::uint64_t> values;
    for (std::size_t m = 1;; ++m) {
        std::uint64_t floor_value = values.empty() ? 3 : values.back() + 1;
        values.push_back(std::max(floor_value, alpha_circ(alpha, factorial(m + 1))));
        if (gamma(BetaFn(values), m) >= checked_k) break;
    }
    BetaFn beta(values);
    BetaCertificate cert{alpha.spec(), values, values.size(), checked_k, false, std::nullopt};
    cert.violating_k = check_beta_certificate(alpha, values, checked_k);
    cert.ok = !cert.violating_k;
    if (!cert.ok)
        throw Error("beta certificate failed at k = " + std::to_string(*cert.violating_k));
    return {std::move(beta), std::move(cert)};
}

std::optional<std::uint64_t> check_beta_certificate(const MonotoneMap& alpha,
                                                    const std::vector<std::uint64_t>& beta,
                                                    std::uint64_t checked_k) {
    // sizes[m] = sum_{j=1..m} m!/(m-j)! * beta[j-1], built from scratch
    std::vector<BigInt> sizes{BigInt(0)};
    for (std::size_t m = 1; m <= beta.size(); ++m) {
        BigInt total = 0;
        for (std::size_t j = 1; j <= m; ++j) {
            BigInt arrangements = 1;
            for (std::size_t r = m; r > m - j; --r) arrangements *= r;
            total += arrangements * beta[j - 1];
        }
        sizes.push_back(total);
    }
    std::size_t m = 0;
    BigInt m_factorial = 1;
    for (std::uint64_t k = 0; k <= checked_k; ++k) {
        while (m < beta.size() && sizes[m] < k) {
            ++m;
            m_factorial *= m;
        }
        if (sizes[m] < k) return k;  // not covered by the given beta values
        if (m_factorial > alpha(k)) return k;
    }
    return std::nullopt;
}

}  // namespace sunflower

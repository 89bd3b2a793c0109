#include "sfs/mask.hpp"

#include <cctype>
#include <cmath>

namespace sfs {

Mask::Mask(int offset, std::vector<double> coeffs) : offset_(offset), coeffs_(std::move(coeffs)) {
    size_t lo = 0;
    while (lo < coeffs_.size() && coeffs_[lo] == 0.0) ++lo;
    size_t hi = coeffs_.size();
    while (hi > lo && coeffs_[hi - 1] == 0.0) --hi;
    if (lo == hi) throw Error("Mask: all coefficients are zero");
    if (lo > 0 || hi < coeffs_.size()) {
        coeffs_ = std::vector<double>(coeffs_.begin() + lo, coeffs_.begin() + hi);
        offset_ += static_cast<int>(lo);
    }
    for (double v : coeffs_)
        if (!std::isfinite(v)) throw Error("Mask: non-finite coefficient");
}

Mask::Centered Mask::centered() const {
    Centered c;
    c.odd = (size() % 2) == 1;
    // odd: 2l+1 coefficients on {-l..l}; even: 2l on {-l+1..l}
    c.ell = c.odd ? (size() - 1) / 2 : size() / 2;
    const int centered_min = c.odd ? -c.ell : -c.ell + 1;
    c.shift = min_index() - centered_min;
    return c;
}

ConstantReproduction check_constant_reproduction(const Mask& m) {
    ConstantReproduction r{false, 0.0, 0.0};
    for (int j = m.min_index(); j <= m.max_index(); ++j) {
        if (((j % 2) + 2) % 2 == 0)
            r.even_sum += m.at(j);
        else
            r.odd_sum += m.at(j);
    }
    r.ok = std::fabs(r.even_sum - 1.0) <= 1e-12 && std::fabs(r.odd_sum - 1.0) <= 1e-12;
    return r;
}

PointSet refine(const Mask& m, const PointSet& p) {
    if (p.empty()) throw Error("refine: empty data");
    const auto c = m.centered();
    const int n = p.size();
    // centered support [lo, hi]; output i valid when its stencil
    // interval {ceil((i-hi)/2) .. floor((i-lo)/2)} fits in [0, n-1]
    const int lo = c.odd ? -c.ell : -c.ell + 1;
    const int hi = c.ell;
    auto ceil_div2 = [](int v) { return (v >= 0) ? (v + 1) / 2 : -((-v) / 2); };
    auto floor_div2 = [](int v) { return (v >= 0) ? v / 2 : -((-v + 1) / 2); };

    PointSet out(p.dim());
    for (int i = lo - 2; i <= 2 * (n - 1) + hi + 2; ++i) {
        const int jmin = ceil_div2(i - hi);
        const int jmax = floor_div2(i - lo);
        if (jmin > jmax) continue;       // empty stencil (odd rule of a 1-tap mask)
        if (jmin < 0 || jmax > n - 1) continue;
        Vec acc(p.dim(), 0.0);
        for (int j = jmin; j <= jmax; ++j) {
            const double w = m.at(i - 2 * j + c.shift);
            if (w == 0.0) continue;
            auto q = p.point(j);
            for (int d = 0; d < p.dim(); ++d) acc[d] += w * q[d];
        }
        out.append({acc.data(), acc.size()});
    }
    if (out.empty()) throw Error("refine: data shorter than the mask stencil");
    return out;
}

MaskSequence::MaskSequence(int support_size, std::string description, std::function<Mask(int)> gen)
    : state_(std::make_shared<State>()), support_size_(support_size), description_(description) {
    state_->support_size = support_size;
    state_->description = std::move(description);
    state_->gen = std::move(gen);
}

const Mask& MaskSequence::mask(int k) const {
    if (!state_) throw Error("MaskSequence: empty");
    if (k < 1) throw Error("MaskSequence: level must be >= 1");
    std::lock_guard<std::mutex> lock(state_->mu);
    auto it = state_->cache.find(k);
    if (it == state_->cache.end()) {
        Mask m = state_->gen(k);
        if (m.size() != state_->support_size)
            throw Error("MaskSequence: generated mask support size " + std::to_string(m.size()) +
                        " != declared " + std::to_string(state_->support_size));
        it = state_->cache.emplace(k, std::move(m)).first;
    }
    return it->second;
}

MaskSequence MaskSequence::constant(const Mask& m, std::string description) {
    return MaskSequence(m.size(), std::move(description), [m](int) { return m; });
}

namespace {

// number := decimal | decimal "/" decimal
double parse_number(const std::string& s, size_t& pos) {
    size_t start = pos;
    auto read_decimal = [&]() -> double {
        size_t begin = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        bool digits = false;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
            digits = true;
            ++pos;
        }
        if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
            size_t save = pos;
            ++pos;
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            } else {
                pos = save;
            }
        }
        if (!digits) throw Error("laurent mask: expected number at '" + s.substr(begin, 12) + "'");
        return std::stod(s.substr(begin, pos - begin));
    };
    double v = read_decimal();
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        const double den = read_decimal();
        if (den == 0.0) throw Error("laurent mask: division by zero");
        v /= den;
    }
    (void)start;
    return v;
}

}  // namespace

Mask parse_laurent_mask(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (auto eq = s.find('='); eq != std::string::npos) s = s.substr(eq + 1);
    if (s.empty()) throw Error("laurent mask: empty expression");

    std::map<int, double> terms;
    size_t pos = 0;
    while (pos < s.size()) {
        double sign = 1.0;
        while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -sign;
            ++pos;
        }
        if (pos >= s.size()) throw Error("laurent mask: dangling sign");
        double coeff = 1.0;
        bool have_coeff = false;
        if (s[pos] != 'z') {
            coeff = parse_number(s, pos);
            have_coeff = true;
            if (pos < s.size() && s[pos] == '*') ++pos;
        }
        int exponent = 0;
        if (pos < s.size() && s[pos] == 'z') {
            ++pos;
            exponent = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                bool paren = pos < s.size() && s[pos] == '(';
                if (paren) ++pos;
                size_t begin = pos;
                if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (begin == pos) throw Error("laurent mask: bad exponent");
                exponent = std::stoi(s.substr(begin, pos - begin));
                if (paren) {
                    if (pos >= s.size() || s[pos] != ')') throw Error("laurent mask: missing ')'");
                    ++pos;
                }
            }
        } else if (!have_coeff) {
            throw Error("laurent mask: expected term at '" + s.substr(pos, 12) + "'");
        }
        terms[exponent] += sign * coeff;
    }
    if (terms.empty()) throw Error("laurent mask: no terms");
    const int lo = terms.begin()->first;
    const int hi = terms.rbegin()->first;
    std::vector<double> coeffs(static_cast<size_t>(hi - lo + 1), 0.0);
    for (auto [e, c] : terms) coeffs[static_cast<size_t>(e - lo)] = c;
    return Mask(lo, std::move(coeffs));
}

}  // namespace sfs

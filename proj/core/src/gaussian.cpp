#include "twistor/gaussian.hpp"

namespace twistor {

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal '" + text + "': " + e.what());
    }
}

std::string rational_str(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

bool rational_sqrt(const Rational& value, Rational& out) {
    if (value < 0) return false;
    BigInt n = numerator(value), d = denominator(value);
    BigInt sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return false;
    out = Rational(sn, sd);
    return true;
}

GaussianRational GaussianRational::pow(unsigned k) const {
    GaussianRational acc(1), base = *this;
    while (k) {
        if (k & 1u) acc *= base;
        base *= base;
        k >>= 1u;
    }
    return acc;
}

std::string GaussianRational::str() const {
    if (im_ == 0) return rational_str(re_);
    std::string out = rational_str(re_);
    if (im_ > 0) {
        out += "+" + rational_str(im_) + "*i";
    } else {
        out += "-" + rational_str(-im_) + "*i";
    }
    return out;
}

GaussianRational GaussianRational::parse(const std::string& text) {
    auto star = text.rfind("*i");
    if (star == std::string::npos) return GaussianRational(parse_rational(text));
    // split the imaginary part off at the last sign that is not a leading
    // sign or part of an exponent-free numerator
    std::string head = text.substr(0, star);
    for (size_t pos = head.size(); pos-- > 1;) {
        char c = head[pos];
        if ((c == '+' || c == '-') && head[pos - 1] != '/') {
            Rational re = parse_rational(head.substr(0, pos));
            Rational im = parse_rational(head.substr(pos + 1));
            if (c == '-') im = -im;
            return GaussianRational(re, im);
        }
    }
    throw std::invalid_argument("bad Gaussian rational literal '" + text + "'");
}

}  // namespace twistor

#pragma once

#include <stdexcept>
#include <string>
#include <tuple>

namespace twistor {

/// Names for the curves tracked through the construction: the twelve cycle
/// curves C1..C6, C1*..C6* (* marks the conjugate), the gluing conics L1..L6,
/// and exceptional curves E<k> introduced by small resolutions, indexed by
/// the cycle label of the node they resolve.
struct CurveLabel {
    enum class Kind { Cycle, Conic, Exceptional };

    Kind kind = Kind::Cycle;
    int index = 0;
    bool bar = false;

    static CurveLabel cycle(int index, bool bar) { return {Kind::Cycle, index, bar}; }
    static CurveLabel conic(int fiber) { return {Kind::Conic, fiber, false}; }
    static CurveLabel exceptional(int index, bool bar) { return {Kind::Exceptional, index, bar}; }

    CurveLabel conj() const {
        if (kind == Kind::Conic) return *this;  // conics are real
        return {kind, index, !bar};
    }

    std::string str() const {
        std::string base;
        switch (kind) {
            case Kind::Cycle: base = "C"; break;
            case Kind::Conic: return "L" + std::to_string(index);
            case Kind::Exceptional: base = "E"; break;
        }
        return base + std::to_string(index) + (bar ? "*" : "");
    }

    static CurveLabel parse(const std::string& text);

    friend bool operator==(const CurveLabel& a, const CurveLabel& b) {
        return a.kind == b.kind && a.index == b.index && a.bar == b.bar;
    }
    friend bool operator!=(const CurveLabel& a, const CurveLabel& b) { return !(a == b); }
    friend bool operator<(const CurveLabel& a, const CurveLabel& b) {
        return std::tie(a.kind, a.index, a.bar) < std::tie(b.kind, b.index, b.bar);
    }
};

inline CurveLabel CurveLabel::parse(const std::string& text) {
    if (text.size() < 2) throw std::invalid_argument("bad curve label '" + text + "'");
    Kind kind;
    switch (text[0]) {
        case 'C': kind = Kind::Cycle; break;
        case 'L': kind = Kind::Conic; break;
        case 'E': kind = Kind::Exceptional; break;
        default: throw std::invalid_argument("bad curve label '" + text + "'");
    }
    bool bar = text.back() == '*';
    int index = std::stoi(text.substr(1, text.size() - 1 - (bar ? 1 : 0)));
    return {kind, index, bar};
}

}  // namespace twistor

#ifndef FINMAP_RATIONAL_HPP
#define FINMAP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <sstream>
#include <vector>

#include "finmap/errors.hpp"

namespace finmap {

// All coordinates, distances and breakpoints in this library are exact
// rationals.  There is no floating point anywhere.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat make_rat(long num, long den = 1) { return Rat(num, den); }

inline std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

// Accepts "p/q", "p", optional leading '-'.
inline Rat parse_rat(const std::string& text) {
    std::string s = text;
    // trim
    auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    auto check_int = [&](const std::string& t) {
        if (t.empty()) throw ParseError("bad rational literal '" + text + "'");
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw ParseError("bad rational literal '" + text + "'");
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw ParseError("bad rational literal '" + text + "'");
    };
    if (slash == std::string::npos) {
        check_int(s);
        return Rat(BigInt(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    BigInt d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rat(BigInt(num), d);
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }
inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// x mod 1, result in [0,1)
inline Rat mod1(const Rat& x) {
    BigInt q = numerator(x) / denominator(x);
    Rat r = x - Rat(q);
    if (r < 0) r += 1;
    return r;
}

// Arc metric on R/Z.
inline Rat circle_dist(const Rat& a, const Rat& b) {
    Rat d = rat_abs(mod1(a) - mod1(b));
    return rat_min(d, Rat(1) - d);
}

} // namespace finmap

#endif

#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace hetsim {

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// All floating-point CSV fields are printed with 9 significant digits.
inline std::string format_g9(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Round-trip a value through its published representation so that summary
// statistics recomputed from emitted CSVs agree bit-for-bit.
inline double round_g9(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

} // namespace hetsim

#pragma once

#include <array>
#include <istream>
#include <string>

#include "g2c/oracle.hpp"
#include "g2c/theta.hpp"

namespace g2c {

// Parsed curve description. Grammar: `key=value` lines, `#` comments.
// Keys: field.n, field.modulus (optional, F_3 digits low-to-high),
// curve.rosenhain=e1,e2,e3 or curve.quintic=c0,...,c5 with field elements
// written as low-to-high digit strings.
struct CurveInput {
    FieldPtr F;
    bool rosenhain = false;
    std::array<FElem, 3> e;  // rosenhain branch values
    FPoly quintic;           // c0..c5 otherwise
};

CurveInput parse_curve_file(std::istream& in);
CurveInput load_curve_file(const std::string& path);

Curve input_to_curve(const CurveInput& in);

// Canonical machine-readable output of a counting run; serialized as
// line-delimited key=value text that parse_result round-trips.
struct ResultRecord {
    FrobCharPoly chi;
    int extension_degree = 1;
    int precision = 0;
    bool ordinary = true;
    double t_theta = 0, t_lift = 0, t_norm = 0, t_chi = 0;
};

std::string format_result(const ResultRecord& r);
ResultRecord parse_result(const std::string& text);

}  // namespace g2c

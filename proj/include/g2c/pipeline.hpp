#pragma once

#include <functional>
#include <string>

#include "g2c/frobpoly.hpp"

namespace g2c {

struct PipelineOptions {
    uint64_t seed = 1;
    int trials = 20;  // random divisors per elimination round
    int threads = 1;
    std::function<void(const std::string&)> trace;
};

struct PipelineResult {
    FrobCharPoly chi;    // over the input curve's field
    int ext_degree = 1;  // theta field of definition over the curve field
    int m = 0;           // working 3-adic precision
    double t_theta = 0, t_lift = 0, t_norm = 0, t_chi = 0;  // seconds
};

// Point counting by canonical lift: theta null point, Hensel lift,
// Verschiebung norm, charpoly recovery. Deterministic for a given seed.
PipelineResult count_rosenhain(const RosenhainCurve& rc, const PipelineOptions& opt);

// Quintic input: brought to Rosenhain form over the splitting field first,
// counted there, then descended back.
PipelineResult count_curve(const Curve& c, const PipelineOptions& opt);

}  // namespace g2c

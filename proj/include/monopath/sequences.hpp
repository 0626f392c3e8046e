#pragma once

#include <optional>
#include <vector>

#include "monopath/quadratic.hpp"

namespace monopath {

// Nondecreasing sequence of nonnegative integers a_1 <= ... <= a_n. The graph
// application only ever produces integers; fractional thresholds stay exact
// because all queries take rational arguments.
struct OscillationSequence {
    std::vector<i64> values;

    static OscillationSequence of(std::vector<i64> v);  // validates shape
    i64 size() const { return i64(values.size()); }
    i64 at(i64 i) const { return values[size_t(i - 1)]; }  // 1-based
};

struct OscillationInfo {
    i64 amount = 0;   // min of the two one-sided maxima, clamped at 0
    i64 rise_at = 0;  // index attaining max(a_i - i)
    i64 dip_at = 0;   // index attaining max(j - a_j)
};

OscillationInfo oscillation(const OscillationSequence& s);

// Least index with a_i >= i + t (resp. a_j <= j - t). Defined exactly for
// 0 < t <= oscillation.
i64 first_rise(const OscillationSequence& s, const Rational& t);
i64 first_dip(const OscillationSequence& s, const Rational& t);

// Maximal runs of indices on one side of the diagonal a_i = i, alternating.
// When a_1 >= 1 the odd-numbered runs sit on or above the diagonal; when
// a_1 < 1 the convention flips. gaps[r] is the largest |a_j - j| over run r.
struct RunPartition {
    struct Run {
        i64 begin = 0, end = 0;  // inclusive, 1-based
    };
    std::vector<Run> runs;
    std::vector<i64> gaps;
    bool flipped = false;  // true when a_1 < 1
};

RunPartition diagonal_runs(const OscillationSequence& s);

// Nonnegative values, not necessarily monotone. Rational entries so that
// recurrence-generated sequences stay exact.
struct GapSequence {
    std::vector<Rational> values;

    i64 size() const { return i64(values.size()); }
    const Rational& at(i64 i) const { return values[size_t(i - 1)]; }
    bool all_integral() const;
};

struct GoodWitness {
    bool good = false;
    i64 odd_index = 0;   // least odd index with value >= threshold
    i64 even_index = 0;  // least even index with value >= threshold
};

GoodWitness is_good(const GapSequence& g, const Rational& threshold);

// Sum of the values strictly before the first odd (resp. even) index whose
// value reaches t. Requires the sequence to be t-good.
Rational odd_prefix_sum(const GapSequence& g, const Rational& t);
Rational even_prefix_sum(const GapSequence& g, const Rational& t);

struct ThresholdCertificate {
    Rational t;
    i64 odd_index = 0;
    i64 even_index = 0;
    Rational odd_sum;
    Rational even_sum;
};

// Searches t in [k, k*scale] with odd_prefix_sum(t) + even_prefix_sum(t) >=
// (3 + sqrt(8) - gamma) * t, scanning candidate thresholds just above the
// strictly increasing record values (plus t = k) in increasing order. The
// comparison is exact in Q(sqrt 2). scale = 0 uses horizon_scale(gamma), the
// value for which success is guaranteed; under a smaller explicit scale a
// fruitless search is a PreconditionError, not an alarm.
ThresholdCertificate find_good_threshold(const GapSequence& g, const Rational& k, const Rational& gamma,
                                         i64 scale = 0);

struct OscillationThreshold {
    Rational t;
    i64 rise = 0;  // first_rise(t)
    i64 dip = 0;   // first_dip(t)
};

// Same search on the diagonal gap sequence, certifying
// first_rise(t) + first_dip(t) >= (4 + sqrt(8) - gamma) * t.
OscillationThreshold find_oscillation_threshold(const OscillationSequence& s, const Rational& k,
                                                const Rational& gamma, i64 scale = 0);

// b_1 = 1, b_2 = rho - 2, b_{i+1} = (rho-1) b_i - rho b_{i-1}, evaluated in
// extended precision with a running error ball so the first sign change is
// certified, never a rounding artifact.
struct RecurrenceTrace {
    long double rho = 0;
    std::vector<long double> values;
    std::optional<i64> first_negative;  // 1-based index of the first certified b_m < 0
};

RecurrenceTrace recurrence_trace(long double rho, i64 max_len);

// 6 * 4^m where m is the first negative index of the trace at
// rho = 3 + sqrt(8) - gamma; requires 0 < gamma < 3 + sqrt(8).
i64 horizon_scale(const Rational& gamma);

// The nonnegative prefix of the recurrence itself (exact rationals), i.e. the
// gap sequence meeting the record recursion with equality.
GapSequence extremal_gap_sequence(const Rational& rho, i64 length);

// Sequence file: whitespace-separated nonnegative integers, '#' starts a
// comment running to the end of the line.
OscillationSequence read_sequence_file(const std::string& path);
void write_sequence_file(const std::string& path, const OscillationSequence& s);

}  // namespace monopath

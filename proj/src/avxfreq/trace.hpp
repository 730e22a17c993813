#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "avxfreq/model.hpp"

namespace avxfreq {

/// Instruction mix of a trace segment. Scalar also stands for light vector
/// code that needs no license; the Heavy variants sustain enough wide ops to
/// demand the corresponding license level.
enum class SegmentClass { Scalar, Avx2Heavy, Avx512Heavy };

LicenseLevel required_level(SegmentClass c);
const char* to_string(SegmentClass c);
SegmentClass segment_class_from_string(std::string_view s);

struct TraceSegment {
    SegmentClass cls = SegmentClass::Scalar;
    double dur_ref_us = 0.0; // duration at the reference frequency
    bool hint = false;       // application signalled "wide work is over"
};

/// A sequence of segments with optional free-form metadata.
///
/// File format: JSON lines, one segment per line,
///   {"class": "scalar"|"avx2"|"avx512", "dur_us": <positive>, "hint": <bool, optional>}
/// optionally preceded by a single {"meta": {...}} line.
/// Hints may only sit on scalar segments and durations must be positive.
class WorkloadTrace {
public:
    explicit WorkloadTrace(std::vector<TraceSegment> segments,
                           std::map<std::string, std::string> meta = {});

    static WorkloadTrace parse(const std::string& text);
    static WorkloadTrace parse(std::istream& in);
    std::string emit() const;

    const std::vector<TraceSegment>& segments() const { return segments_; }
    const std::map<std::string, std::string>& meta() const { return meta_; }
    double total_ref_us() const;

private:
    std::vector<TraceSegment> segments_;
    std::map<std::string, std::string> meta_;
};

/// Duration distribution for the synthetic workload generator.
struct Dist {
    enum class Kind { Fixed, LogNormal, Exponential };

    Kind kind = Kind::Fixed;
    double mean = 0.0;      // distribution mean, us
    double sigma_log = 0.5; // log-space sigma (LogNormal only)

    static Dist fixed(double value);
    static Dist lognormal(double mean, double sigma_log = 0.5);
    static Dist exponential(double mean);

    /// "fixed:20", "lognormal:20", "lognormal:20:0.75", "exp:300".
    static Dist parse(std::string_view spec);

    double sample(std::mt19937_64& rng) const;
    std::string describe() const;
};

/// TLS-terminating web server: each request decrypts (AVX-512), processes the
/// plain request (scalar, hint at its start), encrypts the response (AVX-512)
/// and then waits for the next request. A non-positive sampled wait produces
/// back-to-back requests with no gap segment.
struct WebTraceConfig {
    int n_requests = 1000;
    Dist decrypt = Dist::lognormal(20.0);
    Dist process = Dist::lognormal(500.0);
    Dist encrypt = Dist::lognormal(20.0);
    Dist gap = Dist::exponential(300.0);
    std::uint64_t seed = 1;
};

WorkloadTrace gen_web_trace(const WebTraceConfig& cfg);

/// Per-class totals plus the lengths of every maximal scalar run (the "gaps"
/// between license-demanding work, counting leading and trailing runs).
struct TraceStats {
    std::array<double, 3> class_total_us{}; // indexed by SegmentClass
    std::array<int, 3> class_segments{};
    double total_us = 0.0;
    std::vector<double> gaps_us;
    double gap_bin_width_us = 100.0;
    std::vector<int> gap_histogram; // 20 bins, then overflow
    int gap_overflow = 0;

    nlohmann::json to_json() const;
};

TraceStats trace_stats(const WorkloadTrace& trace);

} // namespace avxfreq

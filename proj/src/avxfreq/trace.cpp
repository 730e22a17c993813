#include "avxfreq/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace avxfreq {

LicenseLevel required_level(SegmentClass c) {
    switch (c) {
    case SegmentClass::Scalar: return LicenseLevel::L0;
    case SegmentClass::Avx2Heavy: return LicenseLevel::L1;
    case SegmentClass::Avx512Heavy: return LicenseLevel::L2;
    }
    return LicenseLevel::L0;
}

const char* to_string(SegmentClass c) {
    switch (c) {
    case SegmentClass::Scalar: return "scalar";
    case SegmentClass::Avx2Heavy: return "avx2";
    case SegmentClass::Avx512Heavy: return "avx512";
    }
    return "?";
}

SegmentClass segment_class_from_string(std::string_view s) {
    if (s == "scalar") return SegmentClass::Scalar;
    if (s == "avx2") return SegmentClass::Avx2Heavy;
    if (s == "avx512") return SegmentClass::Avx512Heavy;
    throw ParseError("unknown segment class \"" + std::string(s) + "\"");
}

WorkloadTrace::WorkloadTrace(std::vector<TraceSegment> segments,
                             std::map<std::string, std::string> meta)
    : segments_(std::move(segments)), meta_(std::move(meta)) {
    if (segments_.empty())
        throw ParseError("empty trace");
    for (const auto& s : segments_) {
        if (!(s.dur_ref_us > 0.0))
            throw ParseError("non-positive duration");
        if (s.hint && s.cls != SegmentClass::Scalar)
            throw ParseError("hint on a non-scalar segment");
    }
}

WorkloadTrace WorkloadTrace::parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

WorkloadTrace WorkloadTrace::parse(std::istream& in) {
    std::vector<TraceSegment> segments;
    std::map<std::string, std::string> meta;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw ParseError("not valid JSON", lineno);
        if (j.contains("meta")) {
            if (!segments.empty() || !meta.empty())
                throw ParseError("meta must be the first line", lineno);
            for (const auto& [k, v] : j["meta"].items())
                meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
            continue;
        }
        TraceSegment seg;
        if (!j.contains("class") || !j["class"].is_string())
            throw ParseError("missing \"class\"", lineno);
        try {
            seg.cls = segment_class_from_string(j["class"].get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
        if (!j.contains("dur_us") || !j["dur_us"].is_number())
            throw ParseError("missing numeric \"dur_us\"", lineno);
        seg.dur_ref_us = j["dur_us"].get<double>();
        if (!(seg.dur_ref_us > 0.0))
            throw ParseError("non-positive duration", lineno);
        if (j.contains("hint")) {
            if (!j["hint"].is_boolean())
                throw ParseError("\"hint\" must be a boolean", lineno);
            seg.hint = j["hint"].get<bool>();
            if (seg.hint && seg.cls != SegmentClass::Scalar)
                throw ParseError("hint on a non-scalar segment", lineno);
        }
        segments.push_back(seg);
    }
    if (segments.empty())
        throw ParseError("empty trace");
    return WorkloadTrace(std::move(segments), std::move(meta));
}

std::string WorkloadTrace::emit() const {
    std::string out;
    if (!meta_.empty()) {
        nlohmann::json m;
        for (const auto& [k, v] : meta_)
            m[k] = v;
        out += nlohmann::json{{"meta", m}}.dump();
        out += '\n';
    }
    for (const auto& s : segments_) {
        nlohmann::json j{{"class", to_string(s.cls)}, {"dur_us", s.dur_ref_us}};
        if (s.hint)
            j["hint"] = true;
        out += j.dump();
        out += '\n';
    }
    return out;
}

double WorkloadTrace::total_ref_us() const {
    double t = 0.0;
    for (const auto& s : segments_)
        t += s.dur_ref_us;
    return t;
}

Dist Dist::fixed(double value) { return {Kind::Fixed, value, 0.0}; }
Dist Dist::lognormal(double mean, double sigma_log) { return {Kind::LogNormal, mean, sigma_log}; }
Dist Dist::exponential(double mean) { return {Kind::Exponential, mean, 0.0}; }

Dist Dist::parse(std::string_view spec) {
    auto bad = [&]() -> ConfigError {
        return ConfigError("bad distribution spec \"" + std::string(spec) +
                           "\" (want kind:mean[:sigma])");
    };
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 2 || parts.size() > 3)
        throw bad();
    auto num = [&](const std::string& s) {
        double v = 0.0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || end != s.data() + s.size())
            throw bad();
        return v;
    };
    const std::string& kind = parts[0];
    double mean = num(parts[1]);
    if (!(mean > 0.0))
        throw ConfigError("distribution mean must be positive in \"" + std::string(spec) + "\"");
    if (kind == "fixed" || kind == "exp" || kind == "exponential") {
        if (parts.size() == 3)
            throw bad();
        return kind == "fixed" ? fixed(mean) : exponential(mean);
    }
    if (kind == "lognormal") {
        double sigma = parts.size() == 3 ? num(parts[2]) : 0.5;
        if (!(sigma > 0.0))
            throw ConfigError("lognormal sigma must be positive in \"" + std::string(spec) + "\"");
        return lognormal(mean, sigma);
    }
    throw ConfigError("unknown distribution \"" + kind + "\" (fixed, lognormal, exp)");
}

double Dist::sample(std::mt19937_64& rng) const {
    switch (kind) {
    case Kind::Fixed:
        return mean;
    case Kind::LogNormal: {
        // Parameterized by the distribution mean: mu = ln(mean) - sigma^2/2.
        double mu = std::log(mean) - sigma_log * sigma_log / 2.0;
        return std::lognormal_distribution<double>(mu, sigma_log)(rng);
    }
    case Kind::Exponential:
        return std::exponential_distribution<double>(1.0 / mean)(rng);
    }
    return mean;
}

std::string Dist::describe() const {
    // Emits the same spec syntax parse() accepts.
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
    case Kind::Fixed: os << "fixed:" << mean; break;
    case Kind::LogNormal: os << "lognormal:" << mean << ":" << sigma_log; break;
    case Kind::Exponential: os << "exp:" << mean; break;
    }
    return os.str();
}

namespace {

void validate_dist(const Dist& d, const char* what) {
    if (!(d.mean > 0.0))
        throw ConfigError(std::string(what) + ": distribution mean must be positive");
    if (d.kind == Dist::Kind::LogNormal && !(d.sigma_log > 0.0))
        throw ConfigError(std::string(what) + ": lognormal sigma must be positive");
}

} // namespace

WorkloadTrace gen_web_trace(const WebTraceConfig& cfg) {
    if (cfg.n_requests < 1)
        throw ConfigError("gen_web_trace: need at least one request");
    validate_dist(cfg.decrypt, "decrypt");
    validate_dist(cfg.process, "process");
    validate_dist(cfg.encrypt, "encrypt");
    validate_dist(cfg.gap, "gap");

    std::mt19937_64 rng(cfg.seed);
    std::vector<TraceSegment> segments;
    segments.reserve(static_cast<std::size_t>(cfg.n_requests) * 4);
    for (int i = 0; i < cfg.n_requests; ++i) {
        double decrypt = std::max(cfg.decrypt.sample(rng), 1e-6);
        double process = std::max(cfg.process.sample(rng), 1e-6);
        double encrypt = std::max(cfg.encrypt.sample(rng), 1e-6);
        double gap = cfg.gap.sample(rng);
        segments.push_back({SegmentClass::Avx512Heavy, decrypt, false});
        segments.push_back({SegmentClass::Scalar, process, true});
        segments.push_back({SegmentClass::Avx512Heavy, encrypt, false});
        if (gap > 0.0)
            segments.push_back({SegmentClass::Scalar, gap, false});
    }

    std::map<std::string, std::string> meta{
        {"generator", "web"},
        {"n_requests", std::to_string(cfg.n_requests)},
        {"seed", std::to_string(cfg.seed)},
        {"decrypt", cfg.decrypt.describe()},
        {"process", cfg.process.describe()},
        {"encrypt", cfg.encrypt.describe()},
        {"gap", cfg.gap.describe()},
    };
    return WorkloadTrace(std::move(segments), std::move(meta));
}

TraceStats trace_stats(const WorkloadTrace& trace) {
    TraceStats st;
    st.gap_histogram.assign(20, 0);
    double run = 0.0;
    bool in_run = false;
    auto close_run = [&] {
        if (!in_run)
            return;
        st.gaps_us.push_back(run);
        auto bin = static_cast<std::size_t>(run / st.gap_bin_width_us);
        if (bin < st.gap_histogram.size())
            ++st.gap_histogram[bin];
        else
            ++st.gap_overflow;
        run = 0.0;
        in_run = false;
    };
    for (const auto& s : trace.segments()) {
        st.class_total_us[static_cast<int>(s.cls)] += s.dur_ref_us;
        ++st.class_segments[static_cast<int>(s.cls)];
        st.total_us += s.dur_ref_us;
        if (s.cls == SegmentClass::Scalar) {
            run += s.dur_ref_us;
            in_run = true;
        } else {
            close_run();
        }
    }
    close_run();
    return st;
}

nlohmann::json TraceStats::to_json() const {
    auto percentile = [](std::vector<double> v, double p) -> double {
        if (v.empty())
            return 0.0;
        std::sort(v.begin(), v.end());
        auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
        rank = std::min(std::max<std::size_t>(rank, 1), v.size());
        return v[rank - 1];
    };
    nlohmann::json gaps;
    gaps["count"] = gaps_us.size();
    if (!gaps_us.empty()) {
        double total = 0.0, lo = gaps_us.front(), hi = gaps_us.front();
        for (double g : gaps_us) {
            total += g;
            lo = std::min(lo, g);
            hi = std::max(hi, g);
        }
        gaps["total_us"] = total;
        gaps["mean_us"] = total / static_cast<double>(gaps_us.size());
        gaps["min_us"] = lo;
        gaps["max_us"] = hi;
        gaps["p50_us"] = percentile(gaps_us, 0.50);
        gaps["p90_us"] = percentile(gaps_us, 0.90);
    }
    gaps["histogram"] = {{"bin_width_us", gap_bin_width_us},
                         {"counts", gap_histogram},
                         {"overflow", gap_overflow}};
    return {{"total_us", total_us},
            {"classes",
             {{"scalar", {{"total_us", class_total_us[0]}, {"segments", class_segments[0]}}},
              {"avx2", {{"total_us", class_total_us[1]}, {"segments", class_segments[1]}}},
              {"avx512", {{"total_us", class_total_us[2]}, {"segments", class_segments[2]}}}}},
            {"gaps", gaps}};
}

} // namespace avxfreq

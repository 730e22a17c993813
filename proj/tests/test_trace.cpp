#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "avxfreq/trace.hpp"

using namespace avxfreq;

TEST_CASE("segment class round trips through its string form") {
    for (auto c : {SegmentClass::Scalar, SegmentClass::Avx2Heavy, SegmentClass::Avx512Heavy})
        CHECK(segment_class_from_string(to_string(c)) == c);
    CHECK(required_level(SegmentClass::Scalar) == LicenseLevel::L0);
    CHECK(required_level(SegmentClass::Avx2Heavy) == LicenseLevel::L1);
    CHECK(required_level(SegmentClass::Avx512Heavy) == LicenseLevel::L2);
    CHECK_THROWS_AS(segment_class_from_string("sse"), ParseError);
}

TEST_CASE("trace parsing accepts the documented line format") {
    std::string text = R"({"meta": {"origin": "handwritten"}}
{"class": "avx512", "dur_us": 100}

{"class": "scalar", "dur_us": 2000, "hint": true}
{"class": "avx2", "dur_us": 5.5}
)";
    WorkloadTrace tr = WorkloadTrace::parse(text);
    REQUIRE(tr.segments().size() == 3);
    CHECK(tr.segments()[0].cls == SegmentClass::Avx512Heavy);
    CHECK(tr.segments()[0].dur_ref_us == 100.0);
    CHECK_FALSE(tr.segments()[0].hint);
    CHECK(tr.segments()[1].cls == SegmentClass::Scalar);
    CHECK(tr.segments()[1].hint);
    CHECK(tr.segments()[2].dur_ref_us == 5.5);
    CHECK(tr.meta().at("origin") == "handwritten");
    CHECK(tr.total_ref_us() == doctest::Approx(2105.5));

    // Stream and string parsing see the same bytes.
    std::istringstream in(text);
    CHECK(WorkloadTrace::parse(in).emit() == tr.emit());
}

TEST_CASE("trace parse errors carry 1-based line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            WorkloadTrace::parse(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("{\"class\": \"scalar\", \"dur_us\": 0}\n") == 1);
    CHECK(line_of("{\"class\": \"scalar\", \"dur_us\": 10}\n{\"class\": \"scalar\", \"dur_us\": -3}\n") == 2);
    CHECK(line_of("{\"class\": \"mmx\", \"dur_us\": 10}\n") == 1);
    CHECK(line_of("{\"class\": \"scalar\", \"dur_us\": 10}\nnot json\n") == 2);
    CHECK(line_of("{\"class\": \"avx512\", \"dur_us\": 10, \"hint\": true}\n") == 1);
    CHECK(line_of("{\"dur_us\": 10}\n") == 1);
    CHECK(line_of("{\"class\": \"scalar\"}\n") == 1);
    // A meta line anywhere but the top is a stray object, not metadata.
    CHECK(line_of("{\"class\": \"scalar\", \"dur_us\": 10}\n{\"meta\": {}}\n") == 2);
    CHECK_THROWS_AS(WorkloadTrace::parse(std::string{}), ParseError);
    CHECK_THROWS_AS(WorkloadTrace::parse("{\"meta\": {\"only\": 1}}\n"), ParseError);

    // The message names the line so CLI users can find the bad record.
    try {
        WorkloadTrace::parse("{\"class\": \"scalar\", \"dur_us\": 10}\n{\"class\": \"scalar\", \"dur_us\": 0}\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("constructor enforces the same segment rules as the parser") {
    using Segs = std::vector<TraceSegment>;
    CHECK_THROWS_AS(WorkloadTrace(Segs{}), ParseError);
    CHECK_THROWS_AS(WorkloadTrace(Segs{{SegmentClass::Scalar, 0.0, false}}), ParseError);
    CHECK_THROWS_AS(WorkloadTrace(Segs{{SegmentClass::Avx2Heavy, 10.0, true}}), ParseError);
    CHECK_NOTHROW(WorkloadTrace(Segs{{SegmentClass::Scalar, 10.0, true}}));
}

TEST_CASE("emit then parse is the identity on random traces") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> cls_pick(0, 2);
    std::uniform_real_distribution<double> dur(0.001, 5000.0);
    std::bernoulli_distribution coin(0.3);
    for (int round = 0; round < 50; ++round) {
        std::vector<TraceSegment> segs;
        int n = 1 + static_cast<int>(rng() % 20);
        for (int i = 0; i < n; ++i) {
            TraceSegment s;
            s.cls = static_cast<SegmentClass>(cls_pick(rng));
            s.dur_ref_us = dur(rng);
            s.hint = s.cls == SegmentClass::Scalar && coin(rng);
            segs.push_back(s);
        }
        std::map<std::string, std::string> meta;
        if (coin(rng))
            meta["round"] = std::to_string(round);
        WorkloadTrace tr(segs, meta);
        std::string text = tr.emit();
        WorkloadTrace back = WorkloadTrace::parse(text);
        REQUIRE(back.segments().size() == segs.size());
        for (std::size_t i = 0; i < segs.size(); ++i) {
            CHECK(back.segments()[i].cls == segs[i].cls);
            CHECK(back.segments()[i].dur_ref_us == segs[i].dur_ref_us);
            CHECK(back.segments()[i].hint == segs[i].hint);
        }
        CHECK(back.meta() == meta);
        CHECK(back.emit() == text);
    }
}

TEST_CASE("distribution spec parsing") {
    Dist f = Dist::parse("fixed:20");
    CHECK(f.kind == Dist::Kind::Fixed);
    CHECK(f.mean == 20.0);

    Dist ln = Dist::parse("lognormal:500");
    CHECK(ln.kind == Dist::Kind::LogNormal);
    CHECK(ln.mean == 500.0);
    CHECK(ln.sigma_log == 0.5);

    Dist ln2 = Dist::parse("lognormal:20:0.75");
    CHECK(ln2.sigma_log == 0.75);

    Dist e = Dist::parse("exp:300");
    CHECK(e.kind == Dist::Kind::Exponential);
    CHECK(e.mean == 300.0);

    for (const char* bad : {"", "fixed", "fixed:", "fixed:abc", "fixed:20:1", "uniform:3",
                            "lognormal:20:0.5:9", "exp:-1", "fixed:-20", "lognormal:0",
                            "lognormal:20:-0.5", "fixed:20extra"})
        CHECK_THROWS_AS(Dist::parse(bad), ConfigError);

    // describe() round trips through parse for each kind.
    for (const char* spec : {"fixed:20", "lognormal:500", "lognormal:20:0.75", "exp:300"}) {
        Dist d = Dist::parse(spec);
        Dist again = Dist::parse(d.describe());
        CHECK(again.kind == d.kind);
        CHECK(again.mean == doctest::Approx(d.mean));
        if (d.kind == Dist::Kind::LogNormal)
            CHECK(again.sigma_log == doctest::Approx(d.sigma_log));
    }
}

TEST_CASE("distribution sampling hits the requested means") {
    std::mt19937_64 rng(99);
    auto mean_of = [&](const Dist& d, int n) {
        double sum = 0;
        for (int i = 0; i < n; ++i)
            sum += d.sample(rng);
        return sum / n;
    };
    CHECK(mean_of(Dist::fixed(42.0), 10) == doctest::Approx(42.0));
    // Means of 200k draws; generous bounds, these only catch wiring mistakes
    // like using sigma as the log-mean.
    CHECK(mean_of(Dist::lognormal(500.0), 200000) == doctest::Approx(500.0).epsilon(0.02));
    CHECK(mean_of(Dist::lognormal(20.0, 0.75), 200000) == doctest::Approx(20.0).epsilon(0.03));
    CHECK(mean_of(Dist::exponential(300.0), 200000) == doctest::Approx(300.0).epsilon(0.02));
    // Lognormal median sits at exp(mu) = mean * exp(-sigma^2/2).
    Dist ln = Dist::lognormal(500.0);
    std::vector<double> draws(100001);
    for (auto& d : draws)
        d = ln.sample(rng);
    std::nth_element(draws.begin(), draws.begin() + 50000, draws.end());
    CHECK(draws[50000] == doctest::Approx(500.0 * std::exp(-0.125)).epsilon(0.03));
}

TEST_CASE("web trace generator with fixed durations produces the textbook request shape") {
    WebTraceConfig cfg;
    cfg.n_requests = 1;
    cfg.decrypt = Dist::fixed(20.0);
    cfg.process = Dist::fixed(500.0);
    cfg.encrypt = Dist::fixed(20.0);
    cfg.gap = Dist::fixed(300.0);
    cfg.seed = 7;
    WorkloadTrace tr = gen_web_trace(cfg);
    REQUIRE(tr.segments().size() == 4);
    CHECK(tr.segments()[0].cls == SegmentClass::Avx512Heavy);
    CHECK(tr.segments()[0].dur_ref_us == 20.0);
    CHECK(tr.segments()[1].cls == SegmentClass::Scalar);
    CHECK(tr.segments()[1].dur_ref_us == 500.0);
    CHECK(tr.segments()[1].hint);
    CHECK(tr.segments()[2].cls == SegmentClass::Avx512Heavy);
    CHECK(tr.segments()[2].dur_ref_us == 20.0);
    CHECK(tr.segments()[3].cls == SegmentClass::Scalar);
    CHECK(tr.segments()[3].dur_ref_us == 300.0);
    CHECK_FALSE(tr.segments()[3].hint);
    CHECK(tr.total_ref_us() == doctest::Approx(840.0));
    CHECK(tr.meta().at("generator") == "web");

    cfg.n_requests = 3;
    CHECK(gen_web_trace(cfg).segments().size() == 12);
}

TEST_CASE("web trace generator structure holds for random durations") {
    WebTraceConfig cfg;
    cfg.n_requests = 200;
    cfg.seed = 42;
    WorkloadTrace tr = gen_web_trace(cfg);
    const auto& segs = tr.segments();

    int wide = 0, hints = 0;
    for (const auto& s : segs) {
        if (s.cls == SegmentClass::Avx512Heavy) {
            ++wide;
            CHECK_FALSE(s.hint);
        }
        if (s.hint) {
            ++hints;
            CHECK(s.cls == SegmentClass::Scalar);
        }
        CHECK(s.dur_ref_us > 0.0);
    }
    // Two crypto phases and one hinted processing phase per request; gaps are
    // the only optional part.
    CHECK(wide == 2 * cfg.n_requests);
    CHECK(hints == cfg.n_requests);
    CHECK(segs.size() >= 3u * cfg.n_requests);
    CHECK(segs.size() <= 4u * cfg.n_requests);

    // Scalar runs are emitted whole: processing and gap phases always have
    // wide work on both sides, so two scalar segments never sit adjacent.
    for (std::size_t i = 1; i < segs.size(); ++i)
        CHECK_FALSE((segs[i].cls == SegmentClass::Scalar &&
                     segs[i - 1].cls == SegmentClass::Scalar));
}

TEST_CASE("web trace generator is deterministic in the seed") {
    WebTraceConfig cfg;
    cfg.n_requests = 50;
    cfg.seed = 1234;
    std::string a = gen_web_trace(cfg).emit();
    std::string b = gen_web_trace(cfg).emit();
    CHECK(a == b);
    cfg.seed = 1235;
    CHECK(gen_web_trace(cfg).emit() != a);
}

TEST_CASE("web trace generator rejects nonsense configs") {
    WebTraceConfig cfg;
    cfg.n_requests = 0;
    CHECK_THROWS_AS(gen_web_trace(cfg), ConfigError);
    cfg.n_requests = -3;
    CHECK_THROWS_AS(gen_web_trace(cfg), ConfigError);
}

TEST_CASE("trace stats: totals, per-class accounting, gap extraction") {
    WorkloadTrace tr({
        {SegmentClass::Scalar, 50.0, false},
        {SegmentClass::Avx512Heavy, 10.0, false},
        {SegmentClass::Scalar, 100.0, true},
        {SegmentClass::Scalar, 30.0, false},
        {SegmentClass::Avx2Heavy, 5.0, false},
        {SegmentClass::Scalar, 250.0, false},
    });
    TraceStats st = trace_stats(tr);
    CHECK(st.total_us == doctest::Approx(445.0));
    CHECK(st.class_total_us[0] == doctest::Approx(430.0));
    CHECK(st.class_total_us[1] == doctest::Approx(5.0));
    CHECK(st.class_total_us[2] == doctest::Approx(10.0));
    CHECK(st.class_segments[0] == 4);
    CHECK(st.class_segments[1] == 1);
    CHECK(st.class_segments[2] == 1);
    // Maximal scalar runs: the leading 50, the merged 130, the trailing 250.
    REQUIRE(st.gaps_us.size() == 3);
    CHECK(st.gaps_us[0] == doctest::Approx(50.0));
    CHECK(st.gaps_us[1] == doctest::Approx(130.0));
    CHECK(st.gaps_us[2] == doctest::Approx(250.0));

    // Histogram: 100 us bins. 50 -> bin 0; 130 -> bin 1; 250 -> bin 2.
    REQUIRE(st.gap_histogram.size() == 20);
    CHECK(st.gap_histogram[0] == 1);
    CHECK(st.gap_histogram[1] == 1);
    CHECK(st.gap_histogram[2] == 1);
    CHECK(st.gap_overflow == 0);

    nlohmann::json j = st.to_json();
    CHECK(j["gaps"]["count"] == 3);
    CHECK(j["gaps"]["total_us"].get<double>() == doctest::Approx(430.0));
    CHECK(j["gaps"]["max_us"].get<double>() == doctest::Approx(250.0));
    CHECK(j["gaps"]["min_us"].get<double>() == doctest::Approx(50.0));
    CHECK(j["gaps"]["p50_us"].get<double>() == doctest::Approx(130.0));
    CHECK(j["total_us"].get<double>() == doctest::Approx(445.0));
}

TEST_CASE("trace stats edge cases") {
    SUBCASE("all scalar collapses into one gap") {
        WorkloadTrace tr({{SegmentClass::Scalar, 10.0, false}, {SegmentClass::Scalar, 20.0, false}});
        TraceStats st = trace_stats(tr);
        REQUIRE(st.gaps_us.size() == 1);
        CHECK(st.gaps_us[0] == doctest::Approx(30.0));
    }
    SUBCASE("no scalar at all means no gaps") {
        WorkloadTrace tr({{SegmentClass::Avx512Heavy, 10.0, false}});
        TraceStats st = trace_stats(tr);
        CHECK(st.gaps_us.empty());
        CHECK(st.gap_overflow == 0);
        nlohmann::json j = st.to_json();
        CHECK(j["gaps"]["count"] == 0);
    }
    SUBCASE("a gap past the last bin lands in overflow") {
        WorkloadTrace tr({{SegmentClass::Avx512Heavy, 1.0, false},
                          {SegmentClass::Scalar, 5000.0, false},
                          {SegmentClass::Avx512Heavy, 1.0, false}});
        TraceStats st = trace_stats(tr);
        CHECK(st.gap_overflow == 1);
        int binned = 0;
        for (int c : st.gap_histogram)
            binned += c;
        CHECK(binned == 0);
    }
}

TEST_CASE("trace stats conserve time on generated traces") {
    WebTraceConfig cfg;
    cfg.n_requests = 300;
    cfg.seed = 5;
    WorkloadTrace tr = gen_web_trace(cfg);
    TraceStats st = trace_stats(tr);
    CHECK(st.total_us == doctest::Approx(tr.total_ref_us()).epsilon(1e-12));
    CHECK(st.class_total_us[0] + st.class_total_us[1] + st.class_total_us[2] ==
          doctest::Approx(st.total_us).epsilon(1e-12));
    double gap_total = 0;
    for (double g : st.gaps_us)
        gap_total += g;
    // Scalar time and gap time are the same thing, counted two ways.
    CHECK(gap_total == doctest::Approx(st.class_total_us[0]).epsilon(1e-12));
    int hist_count = st.gap_overflow;
    for (int c : st.gap_histogram)
        hist_count += c;
    CHECK(hist_count == static_cast<int>(st.gaps_us.size()));
}

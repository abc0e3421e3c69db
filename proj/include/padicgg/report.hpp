#pragma once

#include <cstdio>
#include <ctime>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "suite.hpp"

namespace padicgg {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const VerifyRecord& rec) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : rec.params) params[k] = v;
    return {{"theorem", std::string(to_string(rec.theorem))},
            {"p", rec.p},
            {"r", rec.r},
            {"K", rec.K},
            {"params", params},
            {"lhs", rec.lhs},
            {"rhs", rec.rhs},
            {"pass", rec.pass},
            {"elapsed_ms", rec.elapsed_ms}};
}

inline ordered_json to_json(const RangeSpec& spec) {
    ordered_json th = ordered_json::array();
    for (auto t : spec.theorems) th.push_back(std::string(to_string(t)));
    ordered_json j;
    j["theorems"] = th;
    j["p_min"] = spec.p_min;
    j["p_max"] = spec.p_max;
    j["r"] = spec.r_values;
    j["K"] = spec.K > 0 ? ordered_json(spec.K) : ordered_json("default");
    j["q_max"] = spec.q_max;
    j["sample"] = spec.sample ? ordered_json(*spec.sample) : ordered_json("default");
    j["seed"] = spec.seed;
    j["allow_p5"] = spec.allow_p5;
    j["timing"] = spec.timing;
    return j;
}

inline ordered_json to_json(const SuiteSummary& s) {
    ordered_json by = ordered_json::object();
    for (const auto& [th, tally] : s.by_theorem)
        by[std::string(to_string(th))] = {{"passed", tally.passed}, {"failed", tally.failed}};
    return {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped}, {"by_theorem", by}};
}

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Output sink for one suite run.
class ReportWriter {
public:
    virtual ~ReportWriter() = default;
    virtual void begin(const RangeSpec& spec, const std::string& started_at) = 0;
    virtual void record(const VerifyRecord& rec) = 0;
    virtual void finish(const SuiteSummary& summary) = 0;
};

/**
 * Streams {suite, started_at, config, records, summary, notes}. Records are
 * written one per line as they arrive, so memory stays flat on long runs.
 */
class JsonReportWriter : public ReportWriter {
public:
    explicit JsonReportWriter(std::ostream& out) : out_(out) {}

    void begin(const RangeSpec& spec, const std::string& started_at) override {
        out_ << "{\n  \"suite\": \"padicgg-verify\",\n  \"started_at\": " << ordered_json(started_at).dump()
             << ",\n  \"config\": " << to_json(spec).dump() << ",\n  \"records\": [";
    }

    void record(const VerifyRecord& rec) override {
        out_ << (first_ ? "\n    " : ",\n    ") << to_json(rec).dump();
        first_ = false;
    }

    void finish(const SuiteSummary& summary) override {
        ordered_json notes = ordered_json::array();
        for (const auto& n : summary.notes)
            notes.push_back({{"theorem", std::string(to_string(n.theorem))}, {"p", n.p}, {"r", n.r}, {"detail", n.detail}});
        out_ << (first_ ? "],\n" : "\n  ],\n") << "  \"summary\": " << to_json(summary).dump() << ",\n  \"notes\": " << notes.dump()
             << "\n}\n";
    }

private:
    std::ostream& out_;
    bool first_ = true;
};

class CsvReportWriter : public ReportWriter {
public:
    explicit CsvReportWriter(std::ostream& out) : out_(out) {}

    void begin(const RangeSpec&, const std::string&) override { out_ << "theorem,p,r,K,params,lhs,rhs,pass,elapsed_ms\n"; }

    void record(const VerifyRecord& rec) override {
        std::string params;
        for (const auto& [k, v] : rec.params) params += (params.empty() ? "" : ";") + k + "=" + v;
        out_ << to_string(rec.theorem) << ',' << rec.p << ',' << rec.r << ',' << rec.K << ',' << quote(params) << ','
             << quote(rec.lhs) << ',' << quote(rec.rhs) << ',' << (rec.pass ? "true" : "false") << ',' << rec.elapsed_ms << '\n';
    }

    void finish(const SuiteSummary&) override {}

private:
    static std::string quote(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    }

    std::ostream& out_;
};

/// Human-readable: one line per (theorem, p, r) plus the first failures.
class TableReportWriter : public ReportWriter {
public:
    explicit TableReportWriter(std::ostream& out, std::size_t max_failures = 40) : out_(out), max_failures_(max_failures) {}

    void begin(const RangeSpec&, const std::string&) override {}

    void record(const VerifyRecord& rec) override {
        auto it = index_.find({rec.theorem, rec.p, rec.r});
        if (it == index_.end()) {
            it = index_.emplace(std::make_tuple(rec.theorem, rec.p, rec.r), order_.size()).first;
            order_.push_back({rec.theorem, rec.p, rec.r, rec.K, 0, 0});
        }
        auto& row = order_[it->second];
        (rec.pass ? row.passed : row.failed) += 1;
        if (!rec.pass && failures_.size() < max_failures_) failures_.push_back(rec);
        if (!rec.pass) ++failure_count_;
    }

    void finish(const SuiteSummary& s) override {
        char line[160];
        std::snprintf(line, sizeof line, "%-12s %5s %3s %3s %9s %9s\n", "theorem", "p", "r", "K", "passed", "failed");
        out_ << line;
        for (const auto& row : order_) {
            std::snprintf(line, sizeof line, "%-12s %5u %3u %3d %9llu %9llu\n", std::string(to_string(row.theorem)).c_str(), row.p,
                          row.r, row.K, static_cast<unsigned long long>(row.passed), static_cast<unsigned long long>(row.failed));
            out_ << line;
        }
        if (!failures_.empty()) {
            out_ << "\nfailures";
            if (failure_count_ > failures_.size()) out_ << " (first " << failures_.size() << " of " << failure_count_ << ")";
            out_ << ":\n";
            for (const auto& rec : failures_) {
                out_ << "  " << to_string(rec.theorem) << " p=" << rec.p << " r=" << rec.r;
                for (const auto& [k, v] : rec.params) out_ << ' ' << k << '=' << v;
                out_ << "\n    lhs " << rec.lhs << "\n    rhs " << rec.rhs << '\n';
            }
        }
        for (const auto& n : s.notes) out_ << "note: " << to_string(n.theorem) << " p=" << n.p << " r=" << n.r << ": " << n.detail << '\n';
        out_ << "\ntotal " << s.total << ", passed " << s.passed << ", failed " << s.failed << ", skipped " << s.skipped << '\n';
    }

private:
    struct Row {
        Theorem theorem;
        std::uint32_t p, r;
        int K;
        std::uint64_t passed, failed;
    };

    std::ostream& out_;
    std::size_t max_failures_;
    std::vector<Row> order_;
    std::map<std::tuple<Theorem, std::uint32_t, std::uint32_t>, std::size_t> index_;
    std::vector<VerifyRecord> failures_;
    std::uint64_t failure_count_ = 0;
};

} // namespace padicgg

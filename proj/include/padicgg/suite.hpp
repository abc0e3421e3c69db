#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "modular.hpp"
#include "verify.hpp"

namespace padicgg {

/// What to run: theorems over every field F_{p^r} with p prime in
/// [p_min, p_max], r in r_values and q <= q_max.
struct RangeSpec {
    std::vector<Theorem> theorems;
    std::uint32_t p_min = 7;
    std::uint32_t p_max = 50;
    std::vector<std::uint32_t> r_values{1, 2};
    int K = 0; // 0: default_precision(p, r)
    std::uint64_t q_max = 2500;
    /// Instances per (theorem, field, branch). 0 forces exhaustive runs;
    /// unset uses the per-theorem default (see default_sample).
    std::optional<std::uint64_t> sample;
    std::uint64_t seed = 1;
    bool allow_p5 = false;
    bool timing = false;
};

/// A (theorem, field) combination that produced no records, or other remarks.
struct SuiteNote {
    Theorem theorem;
    std::uint32_t p = 0;
    std::uint32_t r = 0;
    std::string detail;
};

struct TheoremTally {
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
};

struct SuiteSummary {
    std::uint64_t total = 0;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::uint64_t skipped = 0;
    std::map<Theorem, TheoremTally> by_theorem;
    std::vector<SuiteNote> notes;

    void add(const VerifyRecord& rec) {
        ++total;
        auto& tally = by_theorem[rec.theorem];
        if (rec.pass) {
            ++passed;
            ++tally.passed;
        } else {
            ++failed;
            ++tally.failed;
        }
    }
};

using RecordSink = std::function<void(const VerifyRecord&)>;

/// Checks whose instance space grows like q^2 (or cost like q^3) are sampled
/// above q = 500 unless the caller chooses otherwise.
inline std::uint64_t default_sample(Theorem th, std::uint64_t q) {
    const bool heavy = th == Theorem::MC || th == Theorem::BS1_1 || th == Theorem::BS1_2 || th == Theorem::HESSIAN;
    return heavy && q > 500 ? 20 : 0;
}

/// Fields selected by a spec, in ascending (p, r) order; throws Usage when empty.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> suite_fields(const RangeSpec& spec) {
    if (spec.theorems.empty()) throw error(errc::usage, "no theorems selected");
    if (spec.r_values.empty()) throw error(errc::usage, "no extension degrees selected");
    if (spec.p_min > spec.p_max) throw error(errc::usage, "empty prime range: pmin > pmax");
    std::vector<std::uint32_t> rs = spec.r_values;
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    if (rs.front() == 0) throw error(errc::usage, "extension degree must be >= 1");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t p = std::max<std::uint32_t>(spec.p_min, 3); p <= spec.p_max; ++p) {
        if (!is_prime(p)) continue;
        for (auto r : rs) {
            std::uint64_t q = 1;
            bool small = true;
            for (std::uint32_t i = 0; i < r && small; ++i) {
                q *= p;
                small = q <= spec.q_max;
            }
            if (small) out.emplace_back(p, r);
        }
    }
    if (out.empty())
        throw error(errc::usage, "empty prime range: no odd prime p in [" + std::to_string(spec.p_min) + ", " +
                                     std::to_string(spec.p_max) + "] with p^r <= " + std::to_string(spec.q_max));
    return out;
}

namespace detail {

/// Valid indices in [0, space): all of them when n == 0, otherwise n drawn
/// without replacement (fewer if fewer exist), returned in ascending order.
template <class Valid>
std::vector<std::uint64_t> pick_indices(std::uint64_t space, std::uint64_t n, std::mt19937_64& rng, Valid&& valid) {
    std::vector<std::uint64_t> out;
    if (n == 0 || space <= (std::uint64_t{1} << 22)) {
        for (std::uint64_t i = 0; i < space; ++i)
            if (valid(i)) out.push_back(i);
        if (n == 0 || out.size() <= n) return out;
        for (std::uint64_t i = 0; i < n; ++i) std::swap(out[i], out[i + rng() % (out.size() - i)]);
        out.resize(n);
    } else {
        std::set<std::uint64_t> chosen;
        for (std::uint64_t attempts = 0; chosen.size() < n && attempts < 1000 * n; ++attempts) {
            const std::uint64_t i = rng() % space;
            if (!chosen.count(i) && valid(i)) chosen.insert(i);
        }
        out.assign(chosen.begin(), chosen.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

class SuiteRunner {
public:
    SuiteRunner(const RangeSpec& spec, const RecordSink& sink, SuiteSummary& summary)
        : spec_(spec), sink_(sink), summary_(summary) {}

    void run_field(FieldSession& s) {
        for (Theorem th : spec_.theorems) run_theorem(s, th);
    }

private:
    void run_theorem(FieldSession& s, Theorem th) {
        const std::uint64_t q = s.q();
        const auto& F = s.field();
        switch (th) {
        case Theorem::MT1:
            scan(s, th, "", q, [&](auto i) { return !mt1_gate(s, {code(i)}); }, [&](auto i) { return verify_mt1(s, {code(i)}); });
            break;
        case Theorem::COR2_1:
        case Theorem::COR2_2: {
            const int branch = th == Theorem::COR2_1 ? 1 : 2;
            scan(s, th, "", q * q,
                 [&](auto i) { return !cor2_gate(s, branch, {code(i / q)}, {code(i % q)}); },
                 [&](auto i) { return verify_cor2(s, branch, {code(i / q)}, {code(i % q)}); });
            break;
        }
        case Theorem::BS1_1:
        case Theorem::BS1_2: {
            const int branch = th == Theorem::BS1_1 ? 1 : 2;
            // branch 1: i -> (k, b), a = -3k^2; branch 2: i -> (h, a), b = -h^3 - a h
            auto instance = [&, branch](std::uint64_t i) {
                const FqElement x{code(1 + i / (q - 1))}, y{code(1 + i % (q - 1))};
                if (branch == 1) return std::array<FqElement, 3>{F.neg(F.mul(F.from_int(3), F.mul(x, x))), y, x};
                return std::array<FqElement, 3>{y, F.neg(F.add(F.pow(x, 3), F.mul(y, x))), x};
            };
            scan(s, th, "", (q - 1) * (q - 1),
                 [&](auto i) {
                     const auto v = instance(i);
                     return !bs1_gate(s, branch, v[0], v[1], v[2]);
                 },
                 [&](auto i) {
                     const auto v = instance(i);
                     return verify_bs1(s, branch, v[0], v[1], v[2]);
                 });
            break;
        }
        case Theorem::MC:
            scan(s, th, "", q * q, [&](auto i) { return !mc_gate(s, {code(i / q)}, {code(i % q)}); },
                 [&](auto i) { return verify_mc(s, {code(i / q)}, {code(i % q)}); });
            break;
        case Theorem::HESSIAN:
            scan(s, th, "", q, [&](auto i) { return !hessian_gate(s, {code(i)}, spec_.allow_p5); },
                 [&](auto i) { return verify_hessian(s, {code(i)}, spec_.allow_p5); });
            break;
        case Theorem::LEMMA31:
            for (std::int64_t t : {2, 3, 6}) {
                const std::string tag = "t=" + std::to_string(t);
                if (t % static_cast<std::int64_t>(s.p()) == 0) {
                    note(s, th, tag + ": skipped, p divides t");
                    continue;
                }
                scan_many(s, th, tag, q - 1, [](auto) { return true; },
                          [&](auto i) { return verify_lemma31_records(s, t, static_cast<std::int64_t>(i)); });
            }
            break;
        case Theorem::LEMMA5: {
            const std::uint64_t r = s.r();
            scan(s, th, "", (q - 2) * r, [&](auto i) { return 2 * (1 + i / r) != q - 1; },
                 [&](auto i) { return verify_lemma5_record(s, static_cast<std::int64_t>(1 + i / r), static_cast<std::int64_t>(i % r)); });
            break;
        }
        case Theorem::EQ29:
            scan(s, th, "", q - 2, [](auto) { return true; },
                 [&](auto i) { return verify_eq29_record(s, static_cast<std::int64_t>(i + 1)); });
            break;
        case Theorem::GAUSS_GK: {
            const double tol = default_gauss_tol(q);
            scan(s, th, "", q - 2, [](auto) { return true; }, [&](auto i) {
                const auto k = static_cast<std::int64_t>(i + 1);
                return float_record(th, s, {{"k", std::to_string(k)}}, check_gk_product(k, s.gauss(), tol));
            });
            break;
        }
        case Theorem::GAUSS_THETA: {
            const double tol = default_gauss_tol(q);
            scan(s, th, "", q - 1, [](auto) { return true; }, [&](auto i) {
                const FqElement alpha{code(i + 1)};
                return float_record(th, s, {{"alpha", s.str(alpha)}}, check_theta_expansion(alpha, s.gauss(), tol));
            });
            break;
        }
        case Theorem::GAUSS_DH: {
            const double tol = default_gauss_tol(q);
            for (std::int64_t m : {2, 3, 6}) {
                const std::string tag = "m=" + std::to_string(m);
                if ((q - 1) % static_cast<std::uint64_t>(m) != 0) {
                    note(s, th, tag + ": skipped, q is not 1 mod m");
                    continue;
                }
                scan(s, th, tag, q - 1, [](auto) { return true; }, [&](auto i) {
                    const auto psi = static_cast<std::int64_t>(i);
                    return float_record(th, s, {{"m", std::to_string(m)}, {"psi", std::to_string(psi)}},
                                        check_davenport_hasse(m, psi, s.gauss(), tol));
                });
            }
            break;
        }
        case Theorem::ORTHO:
            emit(s, th, {verify_ortho_record(s, true)});
            emit(s, th, {verify_ortho_record(s, false)});
            break;
        }
    }

    static std::uint32_t code(std::uint64_t i) { return static_cast<std::uint32_t>(i); }

    std::mt19937_64 rng_for(const FieldSession& s, Theorem th, const std::string& tag) const {
        std::vector<std::uint32_t> words{static_cast<std::uint32_t>(spec_.seed), static_cast<std::uint32_t>(spec_.seed >> 32),
                                         static_cast<std::uint32_t>(th), s.p(), s.r()};
        for (char c : tag) words.push_back(static_cast<unsigned char>(c));
        std::seed_seq seq(words.begin(), words.end());
        return std::mt19937_64(seq);
    }

    template <class Valid, class Run>
    void scan(FieldSession& s, Theorem th, const std::string& tag, std::uint64_t space, Valid&& valid, Run&& run) {
        scan_many(s, th, tag, space, valid, [&](std::uint64_t i) { return std::vector<VerifyRecord>{run(i)}; });
    }

    template <class Valid, class Run>
    void scan_many(FieldSession& s, Theorem th, const std::string& tag, std::uint64_t space, Valid&& valid, Run&& run) {
        const std::uint64_t n = spec_.sample ? *spec_.sample : default_sample(th, s.q());
        auto rng = rng_for(s, th, tag);
        const auto chosen = pick_indices(space, n, rng, valid);
        if (chosen.empty()) {
            note(s, th, (tag.empty() ? "" : tag + ": ") + "skipped, no admissible instance");
            return;
        }
        for (auto i : chosen) {
            const auto start = std::chrono::steady_clock::now();
            std::vector<VerifyRecord> recs;
            try {
                recs = run(i);
            } catch (const error& e) {
                VerifyRecord rec = make_record(th, s);
                rec.params = {{"index", std::to_string(i)}};
                if (!tag.empty()) rec.params.emplace_back("case", tag);
                rec.lhs = e.what();
                rec.rhs = "";
                recs.push_back(std::move(rec));
            }
            if (spec_.timing) {
                const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
                for (auto& rec : recs) rec.elapsed_ms = ms;
            }
            emit(s, th, std::move(recs));
        }
    }

    void emit(FieldSession&, Theorem, std::vector<VerifyRecord> recs) {
        for (const auto& rec : recs) {
            summary_.add(rec);
            if (sink_) sink_(rec);
        }
    }

    void note(const FieldSession& s, Theorem th, std::string detail) {
        summary_.notes.push_back({th, s.p(), s.r(), std::move(detail)});
        ++summary_.skipped;
    }

    const RangeSpec& spec_;
    const RecordSink& sink_;
    SuiteSummary& summary_;
};

} // namespace detail

/**
 * Runs every selected check, streaming records to `sink` in a fixed order:
 * fields by (p, r), then theorems in the order given, then instances by index.
 * Output depends only on the spec (elapsed_ms is 0 unless spec.timing).
 */
inline SuiteSummary run_suite(const RangeSpec& spec, const RecordSink& sink) {
    const auto fields = suite_fields(spec);
    SuiteSummary summary;
    detail::SuiteRunner runner(spec, sink, summary);
    for (auto [p, r] : fields) {
        FieldSession session(p, r, spec.K);
        runner.run_field(session);
    }
    return summary;
}

} // namespace padicgg

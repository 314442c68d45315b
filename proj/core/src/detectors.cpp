#include <mwb/detectors.hpp>

#include "bitset.hpp"
#include "tuple_space.hpp"

#include <algorithm>

namespace mwb {

std::string_view to_string(WitnessKind k) {
    switch (k) {
    case WitnessKind::Fcp: return "FCP";
    case WitnessKind::Order: return "ORDER";
    case WitnessKind::Independence: return "INDEPENDENCE";
    }
    return "?";
}

WitnessKind witness_kind_from_string(std::string_view s) {
    if (s == "FCP" || s == "fcp") return WitnessKind::Fcp;
    if (s == "ORDER" || s == "order") return WitnessKind::Order;
    if (s == "INDEPENDENCE" || s == "independence" || s == "ip") return WitnessKind::Independence;
    throw Error("unknown witness kind '" + std::string(s) + "'");
}

namespace {

using detail::Bitset;
using detail::TupleSpace;

struct BudgetExhausted {};

/// Lazily computed solution sets phi(X, p) as bitsets over the object space.
class SolutionTable {
public:
    SolutionTable(const FiniteStructure& s, const PartitionedFormula& pf, std::uint64_t budget)
        : objects_(s.universe_size(), pf.object_vars.size()),
          params_(s.universe_size(), pf.param_vars.size()),
          eval_(s, pf.formula, concat(pf.object_vars, pf.param_vars)),
          budget_(budget) {
        rows_.resize(params_.count());
        values_.resize(pf.object_vars.size() + pf.param_vars.size());
    }

    const TupleSpace& objects() const { return objects_; }
    const TupleSpace& params() const { return params_; }
    std::uint64_t work() const { return work_; }

    void charge(std::uint64_t units) {
        if (units > budget_ - std::min(budget_, work_)) {
            work_ = budget_;
            throw BudgetExhausted{};
        }
        work_ += units;
    }

    const Bitset& row(std::size_t p) {
        auto& slot = rows_[p];
        if (!slot) {
            charge(objects_.count());
            Bitset b(objects_.count());
            const std::size_t kx = objects_.width();
            params_.decode(p, std::span<Element>(values_).subspan(kx));
            for (std::size_t x = 0; x < objects_.count(); ++x) {
                objects_.decode(x, std::span<Element>(values_).first(kx));
                if (eval_(values_)) b.set(x);
            }
            slot = std::move(b);
        }
        return *slot;
    }

private:
    static std::vector<std::string> concat(const std::vector<std::string>& a, const std::vector<std::string>& b) {
        std::vector<std::string> out = a;
        out.insert(out.end(), b.begin(), b.end());
        return out;
    }

    TupleSpace objects_;
    TupleSpace params_;
    Evaluator eval_;
    std::uint64_t budget_;
    std::uint64_t work_ = 0;
    std::vector<std::optional<Bitset>> rows_;
    std::vector<Element> values_;
};

WitnessReport make_report(WitnessKind kind, std::size_t level, const SolutionTable& table,
                          const std::vector<std::size_t>& chosen) {
    WitnessReport r;
    r.kind = kind;
    r.level = level;
    for (std::size_t p : chosen) r.parameter_tuples.push_back(table.params().tuple(p));
    return r;
}

// ----------------------------------------------------------------- order

class OrderSearch {
public:
    OrderSearch(SolutionTable& t, std::size_t level) : table_(t), level_(level) {}

    std::optional<WitnessReport> run() {
        Bitset all = Bitset::full(table_.objects().count());
        std::vector<Bitset> cuts;
        if (dfs(cuts, all)) return report_;
        return std::nullopt;
    }

private:
    bool dfs(const std::vector<Bitset>& cuts, const Bitset& prefix) {
        const std::size_t m = chosen_.size();
        if (m == level_) {
            report_ = make_report(WitnessKind::Order, level_, table_, chosen_);
            for (std::size_t k = 0; k < level_; ++k)
                report_.certificates.push_back({k, table_.objects().tuple(cuts[k].first())});
            return true;
        }
        for (std::size_t p = 0; p < table_.params().count(); ++p) {
            if (std::find(chosen_.begin(), chosen_.end(), p) != chosen_.end()) continue;
            table_.charge(1);
            const Bitset& sol = table_.row(p);
            std::vector<Bitset> next;
            next.reserve(m + 1);
            bool ok = true;
            for (std::size_t k = 0; k < m && ok; ++k) {
                next.push_back(cuts[k].and_not(sol));
                ok = next.back().any();
            }
            if (!ok) continue;
            next.push_back(prefix.and_not(sol));
            if (!next.back().any()) continue;
            Bitset narrowed = prefix & sol;
            if (m + 1 < level_ && !narrowed.any()) continue;
            chosen_.push_back(p);
            if (dfs(next, narrowed)) return true;
            chosen_.pop_back();
        }
        return false;
    }

    SolutionTable& table_;
    std::size_t level_;
    std::vector<std::size_t> chosen_;
    WitnessReport report_;
};

// ---------------------------------------------------------- independence

class IndependenceSearch {
public:
    IndependenceSearch(SolutionTable& t, std::size_t level) : table_(t), level_(level) {}

    std::optional<WitnessReport> run() {
        std::vector<Bitset> patterns{Bitset::full(table_.objects().count())};
        if (dfs(patterns, 0)) return report_;
        return std::nullopt;
    }

private:
    bool dfs(const std::vector<Bitset>& patterns, std::size_t start) {
        const std::size_t m = chosen_.size();
        if (m == level_) {
            report_ = make_report(WitnessKind::Independence, level_, table_, chosen_);
            for (std::size_t s = 0; s < patterns.size(); ++s)
                report_.certificates.push_back({s, table_.objects().tuple(patterns[s].first())});
            return true;
        }
        for (std::size_t p = start; p < table_.params().count(); ++p) {
            table_.charge(1);
            const Bitset& sol = table_.row(p);
            std::vector<Bitset> next(patterns.size() * 2);
            bool ok = true;
            for (std::size_t s = 0; s < patterns.size() && ok; ++s) {
                next[s] = patterns[s].and_not(sol);
                next[s | (std::size_t{1} << m)] = patterns[s] & sol;
                ok = next[s].any() && next[s | (std::size_t{1} << m)].any();
            }
            if (!ok) continue;
            chosen_.push_back(p);
            if (dfs(next, p + 1)) return true;
            chosen_.pop_back();
        }
        return false;
    }

    SolutionTable& table_;
    std::size_t level_;
    std::vector<std::size_t> chosen_;
    WitnessReport report_;
};

// ------------------------------------------------------------------- FCP

class FcpSearch {
public:
    FcpSearch(SolutionTable& t, std::size_t level) : table_(t), level_(level) {}

    std::optional<WitnessReport> run() {
        Bitset all = Bitset::full(table_.objects().count());
        if (level_ == 0) return std::nullopt; // the empty conjunction is satisfiable
        std::vector<Bitset> omissions;
        if (dfs(omissions, all, 0)) return report_;
        return std::nullopt;
    }

private:
    bool dfs(const std::vector<Bitset>& omissions, const Bitset& total, std::size_t start) {
        const std::size_t m = chosen_.size();
        if (m == level_) {
            report_ = make_report(WitnessKind::Fcp, level_, table_, chosen_);
            for (std::size_t l = 0; l < level_; ++l)
                report_.certificates.push_back({l, table_.objects().tuple(omissions[l].first())});
            return true;
        }
        const bool last = m + 1 == level_;
        for (std::size_t p = start; p < table_.params().count(); ++p) {
            table_.charge(1);
            const Bitset& sol = table_.row(p);
            Bitset narrowed = total & sol;
            if (last ? narrowed.any() : !narrowed.any()) continue;
            std::vector<Bitset> next;
            next.reserve(m + 1);
            bool ok = true;
            for (std::size_t l = 0; l < m && ok; ++l) {
                next.push_back(omissions[l] & sol);
                ok = next.back().any();
            }
            if (!ok) continue;
            next.push_back(total);
            chosen_.push_back(p);
            if (dfs(next, narrowed, p + 1)) return true;
            chosen_.pop_back();
        }
        return false;
    }

    SolutionTable& table_;
    std::size_t level_;
    std::vector<std::size_t> chosen_;
    WitnessReport report_;
};

template <typename Search>
SearchOutcome run_search(const FiniteStructure& s, const PartitionedFormula& pf, std::size_t level,
                         std::uint64_t budget) {
    SolutionTable table(s, pf, budget);
    SearchOutcome out;
    try {
        out.witness = Search(table, level).run();
        out.exhaustive = true;
    } catch (const BudgetExhausted&) {
        out.exhaustive = false;
    }
    out.work = table.work();
    return out;
}

} // namespace

SearchOutcome find_order_witness(const FiniteStructure& s, const PartitionedFormula& pf, std::size_t level,
                                 std::uint64_t budget) {
    return run_search<OrderSearch>(s, pf, level, budget);
}

SearchOutcome find_independence_witness(const FiniteStructure& s, const PartitionedFormula& pf, std::size_t level,
                                        std::uint64_t budget) {
    if (level > 20) throw Error("independence search is limited to level 20");
    return run_search<IndependenceSearch>(s, pf, level, budget);
}

SearchOutcome find_fcp_witness(const FiniteStructure& s, const PartitionedFormula& pf, std::size_t level,
                               std::uint64_t budget) {
    return run_search<FcpSearch>(s, pf, level, budget);
}

SearchOutcome find_witness(WitnessKind kind, const FiniteStructure& s, const PartitionedFormula& pf,
                           std::size_t level, std::uint64_t budget) {
    switch (kind) {
    case WitnessKind::Order: return find_order_witness(s, pf, level, budget);
    case WitnessKind::Independence: return find_independence_witness(s, pf, level, budget);
    case WitnessKind::Fcp: return find_fcp_witness(s, pf, level, budget);
    }
    throw Error("unknown witness kind");
}

// ---------------------------------------------------------- certification

Verdict certify(const FiniteStructure& s, const PartitionedFormula& pf, const WitnessReport& report) {
    const std::size_t n = report.level;
    const std::size_t kx = pf.object_vars.size();
    const std::size_t ky = pf.param_vars.size();
    if (report.parameter_tuples.size() != n) return Verdict::fail("wrong number of parameter tuples");
    for (const auto& a : report.parameter_tuples) {
        if (a.size() != ky) return Verdict::fail("parameter tuple " + tuple_to_string(a) + " has the wrong width");
        for (Element e : a)
            if (e >= s.universe_size()) return Verdict::fail("parameter tuple entry outside the universe");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (report.parameter_tuples[i] == report.parameter_tuples[j])
                return Verdict::fail("parameter tuples " + std::to_string(i) + " and " + std::to_string(j) +
                                     " coincide");

    std::vector<std::string> vars = pf.object_vars;
    vars.insert(vars.end(), pf.param_vars.begin(), pf.param_vars.end());
    Evaluator ev(s, pf.formula, vars);
    auto holds = [&](const Tuple& x, std::size_t i) {
        Tuple v = x;
        v.insert(v.end(), report.parameter_tuples[i].begin(), report.parameter_tuples[i].end());
        return ev(v);
    };

    std::size_t expected = report.kind == WitnessKind::Independence ? (std::size_t{1} << n) : n;
    if (report.certificates.size() != expected) return Verdict::fail("wrong number of certificates");
    std::vector<bool> seen(expected, false);
    for (const auto& c : report.certificates) {
        if (c.label >= expected || seen[c.label]) return Verdict::fail("certificate labels are not a partition");
        seen[c.label] = true;
        if (c.solution.size() != kx) return Verdict::fail("certificate has the wrong width");
        for (Element e : c.solution)
            if (e >= s.universe_size()) return Verdict::fail("certificate entry outside the universe");
        for (std::size_t i = 0; i < n; ++i) {
            bool want = false;
            switch (report.kind) {
            case WitnessKind::Order: want = i < c.label; break;
            case WitnessKind::Independence: want = (c.label >> i) & 1U; break;
            case WitnessKind::Fcp:
                if (i == c.label) continue;
                want = true;
                break;
            }
            if (holds(c.solution, i) != want)
                return Verdict::fail("certificate " + std::to_string(c.label) + " fails at parameter " +
                                     std::to_string(i));
        }
    }
    if (report.kind == WitnessKind::Fcp) {
        if (n == 0) return Verdict::fail("an FCP witness needs level >= 1");
        TupleSpace space(s.universe_size(), kx);
        for (std::size_t x = 0; x < space.count(); ++x) {
            Tuple t = space.tuple(x);
            bool all = true;
            for (std::size_t i = 0; i < n && all; ++i) all = holds(t, i);
            if (all) return Verdict::fail("the full conjunction is satisfied by " + tuple_to_string(t));
        }
    }
    return Verdict::pass();
}

WitnessReport truncate(const WitnessReport& report, std::size_t level) {
    if (report.kind == WitnessKind::Fcp) throw Error("FCP witnesses do not truncate");
    if (level > report.level) throw Error("cannot truncate to a higher level");
    WitnessReport out;
    out.kind = report.kind;
    out.level = level;
    out.parameter_tuples.assign(report.parameter_tuples.begin(),
                                report.parameter_tuples.begin() + static_cast<std::ptrdiff_t>(level));
    const std::uint64_t bound = report.kind == WitnessKind::Order ? level : (std::uint64_t{1} << level);
    for (const auto& c : report.certificates)
        if (c.label < bound) out.certificates.push_back(c);
    std::sort(out.certificates.begin(), out.certificates.end(),
              [](const Certificate& a, const Certificate& b) { return a.label < b.label; });
    return out;
}

} // namespace mwb

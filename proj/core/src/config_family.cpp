#include <mwb/config_family.hpp>

#include "tuple_space.hpp"

#include <algorithm>
#include <set>

namespace mwb {

std::string_view to_string(ConfigKind k) { return k == ConfigKind::Stable ? "stable" : "unstable"; }

ConfigKind config_kind_from_string(std::string_view s) {
    if (s == "stable") return ConfigKind::Stable;
    if (s == "unstable") return ConfigKind::Unstable;
    throw Error("unknown configuration kind '" + std::string(s) + "'");
}

std::vector<Element> ConfigLevel::elements() const {
    std::vector<Element> out = spine;
    out.insert(out.end(), matrix.begin(), matrix.end());
    std::sort(out.begin(), out.end());
    return out;
}

const ConfigLevel& ConfigFamily::level(std::size_t n) const {
    for (const auto& l : levels)
        if (l.n == n) return l;
    throw Error("family has no level " + std::to_string(n));
}

namespace {

struct BudgetExhausted {};

constexpr int kDead = -2;
constexpr int kOpen = -1;

class LevelSearch {
public:
    LevelSearch(const FiniteStructure& s, const PartitionedFormula& pf, ConfigKind kind, std::uint64_t budget,
                std::uint64_t& work)
        : s_(s), kind_(kind), budget_(budget), work_(work),
          eval_(s, pf.formula, variables(pf)), params_(s.universe_size(), pf.param_vars.size() - 1) {}

    std::optional<ConfigLevel> run(std::size_t n, const std::vector<bool>& used) {
        n_ = n;
        avail_.clear();
        for (Element e = 0; e < s_.universe_size(); ++e)
            if (!used[e]) avail_.push_back(e);
        if (avail_.size() < n + n * n) return std::nullopt;
        Tuple point(2 + params_.width());
        for (std::size_t d = 0; d < params_.count(); ++d) {
            charge(1);
            params_.decode(d, std::span<Element>(point).subspan(2));
            const std::size_t m = avail_.size();
            charge(m * m);
            rel_.assign(m * m, false);
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t a = 0; a < m; ++a) {
                    point[0] = avail_[b];
                    point[1] = avail_[a];
                    rel_[b * m + a] = eval_(point);
                }
            spine_.clear();
            std::vector<int> cls(m, kOpen);
            if (dfs(cls)) {
                ConfigLevel out;
                out.n = n;
                out.params.assign(point.begin() + 2, point.end());
                for (std::size_t b : spine_) out.spine.push_back(avail_[b]);
                out.matrix.resize(n * n);
                std::vector<std::size_t> filled(n, 0);
                for (std::size_t a = 0; a < m; ++a) {
                    int row = final_row(result_[a]);
                    if (row < 0 || filled[row] == n) continue;
                    out.matrix[row * n + filled[row]++] = avail_[a];
                }
                return out;
            }
        }
        return std::nullopt;
    }

private:
    static std::vector<std::string> variables(const PartitionedFormula& pf) {
        std::vector<std::string> v = pf.object_vars;
        v.insert(v.end(), pf.param_vars.begin(), pf.param_vars.end());
        return v;
    }

    void charge(std::uint64_t units) {
        if (units > budget_ - std::min(budget_, work_)) {
            work_ = budget_;
            throw BudgetExhausted{};
        }
        work_ += units;
    }

    int final_row(int c) const {
        if (c == kOpen) return kind_ == ConfigKind::Unstable ? static_cast<int>(n_) - 1 : -1;
        return c;
    }

    bool feasible(const std::vector<int>& cls, std::size_t chosen) const {
        std::vector<std::size_t> count(n_, 0);
        std::size_t open = 0;
        for (int c : cls) {
            if (c >= 0) ++count[c];
            else if (c == kOpen) ++open;
        }
        // Unstable rows are fixed by the first spine element that misses,
        // so the latest spine element leaves its row still open.
        const std::size_t determined = kind_ == ConfigKind::Stable ? chosen : chosen - 1;
        for (std::size_t i = 0; i < determined; ++i)
            if (count[i] < n_) return false;
        return open >= (n_ - determined) * n_;
    }

    bool dfs(const std::vector<int>& cls) {
        const std::size_t m = spine_.size();
        if (m == n_) {
            result_ = cls;
            return true;
        }
        const std::size_t total = avail_.size();
        for (std::size_t b = 0; b < total; ++b) {
            if (std::find(spine_.begin(), spine_.end(), b) != spine_.end()) continue;
            charge(1);
            std::vector<int> next = cls;
            next[b] = kDead;
            for (std::size_t a = 0; a < total; ++a) {
                int& c = next[a];
                if (c == kDead) continue;
                const bool hit = rel_[b * total + a];
                if (kind_ == ConfigKind::Stable) {
                    if (c == kOpen) {
                        if (hit) c = static_cast<int>(m);
                    } else if (hit) {
                        c = kDead;
                    }
                } else {
                    if (c == kOpen) {
                        if (!hit) c = m == 0 ? kDead : static_cast<int>(m) - 1;
                    } else if (hit) {
                        c = kDead;
                    }
                }
            }
            if (!feasible(next, m + 1)) continue;
            spine_.push_back(b);
            if (dfs(next)) return true;
            spine_.pop_back();
        }
        return false;
    }

    const FiniteStructure& s_;
    ConfigKind kind_;
    std::uint64_t budget_;
    std::uint64_t& work_;
    Evaluator eval_;
    detail::TupleSpace params_;
    std::size_t n_ = 0;
    std::vector<Element> avail_;
    std::vector<bool> rel_;
    std::vector<std::size_t> spine_;
    std::vector<int> result_;
};

void check_shape(const PartitionedFormula& pf) {
    if (pf.object_vars.size() != 1) throw Error("a configuration formula needs exactly one object variable");
    if (pf.param_vars.empty()) throw Error("a configuration formula needs at least one parameter variable");
}

} // namespace

ConfigOutcome find_config_family(const FiniteStructure& s, const PartitionedFormula& pf,
                                 const ConfigSearchOptions& options) {
    check_shape(pf);
    std::vector<std::size_t> order = options.levels;
    {
        std::set<std::size_t> distinct(order.begin(), order.end());
        if (distinct.size() != order.size()) throw Error("configuration levels must be distinct");
        if (distinct.count(0)) throw Error("configuration levels must be positive");
    }
    std::sort(order.begin(), order.end(), std::greater<>());

    ConfigOutcome out;
    std::size_t needed = 0;
    for (std::size_t n : order) needed += n + n * n;
    if (needed > s.universe_size() || s.universe_size() - needed < options.exceptional_reserve) {
        out.exhaustive = true;
        return out;
    }

    std::uint64_t work = 0;
    LevelSearch search(s, pf, options.kind, options.budget, work);
    std::vector<bool> used(s.universe_size(), false);
    std::vector<ConfigLevel> found;
    try {
        for (std::size_t n : order) {
            auto level = search.run(n, used);
            if (!level) {
                // A later level failing after earlier choices is not a proof
                // of absence: different earlier choices might leave room.
                out.exhaustive = found.empty();
                out.work = work;
                return out;
            }
            for (Element e : level->elements()) used[e] = true;
            found.push_back(std::move(*level));
        }
    } catch (const BudgetExhausted&) {
        out.exhaustive = false;
        out.work = work;
        return out;
    }

    ConfigFamily fam;
    fam.kind = options.kind;
    for (std::size_t n : options.levels)
        for (auto& l : found)
            if (l.n == n) fam.levels.push_back(l);
    for (Element e = 0; e < s.universe_size(); ++e)
        if (!used[e]) fam.exceptional.push_back(e);
    out.family = std::move(fam);
    out.exhaustive = true;
    out.work = work;
    return out;
}

Verdict certify_config_family(const FiniteStructure& s, const PartitionedFormula& pf, const ConfigFamily& family) {
    check_shape(pf);
    std::vector<std::string> vars = pf.object_vars;
    vars.insert(vars.end(), pf.param_vars.begin(), pf.param_vars.end());
    Evaluator ev(s, pf.formula, vars);
    std::vector<int> owner(s.universe_size(), -1);
    for (std::size_t li = 0; li < family.levels.size(); ++li) {
        const ConfigLevel& l = family.levels[li];
        const std::string where = "level " + std::to_string(l.n);
        if (l.spine.size() != l.n || l.matrix.size() != l.n * l.n)
            return Verdict::fail(where + " has the wrong shape");
        if (l.params.size() != pf.param_vars.size() - 1) return Verdict::fail(where + " has the wrong parameter count");
        for (Element e : l.elements()) {
            if (e >= s.universe_size()) return Verdict::fail(where + " mentions an element outside the universe");
            if (owner[e] == static_cast<int>(li)) return Verdict::fail(where + " repeats element " + std::to_string(e));
            if (owner[e] >= 0) return Verdict::fail(where + " overlaps another level at element " + std::to_string(e));
            owner[e] = static_cast<int>(li);
        }
        Tuple point(2 + l.params.size());
        std::copy(l.params.begin(), l.params.end(), point.begin() + 2);
        for (std::size_t k = 0; k < l.n; ++k)
            for (std::size_t i = 0; i < l.n; ++i)
                for (std::size_t j = 0; j < l.n; ++j) {
                    point[0] = l.b(k);
                    point[1] = l.a(i, j);
                    const bool want = family.kind == ConfigKind::Stable ? k == i : k <= i;
                    if (ev(point) != want)
                        return Verdict::fail(where + ": pattern fails at b" + std::to_string(k) + ", a" +
                                             std::to_string(i) + std::to_string(j));
                }
    }
    std::vector<Element> rest;
    for (Element e = 0; e < s.universe_size(); ++e)
        if (owner[e] < 0) rest.push_back(e);
    if (rest != family.exceptional) return Verdict::fail("exceptional set is not the complement of the levels");
    return Verdict::pass();
}

ConfigLevel restrict_level(const ConfigLevel& level, std::span<const std::size_t> subset) {
    for (std::size_t t = 0; t < subset.size(); ++t) {
        if (subset[t] >= level.n) throw Error("restriction index out of range");
        if (t > 0 && subset[t] <= subset[t - 1]) throw Error("restriction indices must increase");
    }
    ConfigLevel out;
    out.n = subset.size();
    out.params = level.params;
    for (std::size_t i : subset) out.spine.push_back(level.b(i));
    for (std::size_t i : subset)
        for (std::size_t j : subset) out.matrix.push_back(level.a(i, j));
    return out;
}

} // namespace mwb

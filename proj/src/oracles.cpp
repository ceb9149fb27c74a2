#include "fairdiv/oracles.hpp"

#include "fairdiv/axioms.hpp"
#include "fairdiv/errors.hpp"

#include <string>

namespace fairdiv {

std::vector<Allocation> enumerate_allocations(int agent_count, int item_count, long long cap) {
    if (agent_count < 1 || item_count < 0 || item_count > kMaxItems) {
        throw PreconditionError("enumerate_allocations arguments out of range");
    }
    long long count = 1;
    for (int j = 0; j < item_count; ++j) {
        count *= agent_count;
        if (count > cap) {
            throw CapacityError("allocation enumeration needs " + std::to_string(agent_count) +
                                "^" + std::to_string(item_count) + " > cap " + std::to_string(cap));
        }
    }
    std::vector<Allocation> out;
    out.reserve(static_cast<std::size_t>(count));
    // Owner vectors in lexicographic order, owner of o1 most significant.
    std::vector<int> owners(item_count, 0);
    for (;;) {
        Allocation alloc(agent_count);
        for (int item = 0; item < item_count; ++item) alloc = alloc.give(owners[item], item);
        out.push_back(std::move(alloc));
        int pos = item_count - 1;
        while (pos >= 0 && owners[pos] == agent_count - 1) owners[pos--] = 0;
        if (pos < 0) break;
        ++owners[pos];
    }
    return out;
}

std::optional<Allocation> offline_exists(const Problem& problem, OfflineProperty property,
                                         long long cap) {
    std::vector<Allocation> all =
        enumerate_allocations(problem.agent_count(), problem.item_count(), cap);
    auto pareto_optimal = [&](const Allocation& alloc) {
        for (const Allocation& other : all) {
            bool strict = false;
            bool weak = true;
            for (int i = 0; i < problem.agent_count() && weak; ++i) {
                Rational mine = problem.utility(i).value(alloc.bundle(i));
                Rational theirs = problem.utility(i).value(other.bundle(i));
                if (theirs < mine) weak = false;
                else if (theirs > mine) strict = true;
            }
            if (weak && strict) return false;
        }
        return true;
    };
    for (const Allocation& alloc : all) {
        bool ok = false;
        switch (property) {
        case OfflineProperty::EF: ok = ef_holds(problem, alloc); break;
        case OfflineProperty::EF1: ok = ef1_holds(problem, alloc); break;
        case OfflineProperty::EFX: ok = efx_holds(problem, alloc); break;
        case OfflineProperty::PEP: ok = pareto_optimal(alloc); break;
        }
        if (ok) return alloc;
    }
    return std::nullopt;
}

bool mixture_dominance_oracle(const std::vector<Rational>& target,
                              const std::vector<std::vector<Rational>>& profiles) {
    const int n = static_cast<int>(target.size());
    if (n > 3) throw CapacityError("mixture oracle supports at most 3 agents");
    if (profiles.size() > 8) throw CapacityError("mixture oracle supports at most 8 profiles");
    for (const auto& p : profiles) {
        if (static_cast<int>(p.size()) != n) {
            throw PreconditionError("profile width disagrees with target");
        }
    }

    auto dominates = [&](const std::vector<Rational>& mix) {
        bool strict = false;
        for (int i = 0; i < n; ++i) {
            if (mix[i] < target[i]) return false;
            if (mix[i] > target[i]) strict = true;
        }
        return strict;
    };

    const int count = static_cast<int>(profiles.size());
    // Single profiles, then pairs, then triples; weights a/d with d ≤ 24.
    for (int a = 0; a < count; ++a) {
        if (dominates(profiles[a])) return true;
    }
    std::vector<Rational> mix(n);
    for (int a = 0; a < count; ++a) {
        for (int b = a + 1; b < count; ++b) {
            for (int den = 2; den <= 24; ++den) {
                for (int num = 1; num < den; ++num) {
                    Rational wa(num, den);
                    Rational wb = 1 - wa;
                    for (int i = 0; i < n; ++i) {
                        mix[i] = wa * profiles[a][i] + wb * profiles[b][i];
                    }
                    if (dominates(mix)) return true;
                }
            }
        }
    }
    for (int a = 0; a < count; ++a) {
        for (int b = a + 1; b < count; ++b) {
            for (int c = b + 1; c < count; ++c) {
                for (int den = 3; den <= 24; ++den) {
                    for (int na = 1; na < den - 1; ++na) {
                        for (int nb = 1; na + nb < den; ++nb) {
                            Rational wa(na, den);
                            Rational wb(nb, den);
                            Rational wc = 1 - wa - wb;
                            for (int i = 0; i < n; ++i) {
                                mix[i] = wa * profiles[a][i] + wb * profiles[b][i] +
                                         wc * profiles[c][i];
                            }
                            if (dominates(mix)) return true;
                        }
                    }
                }
            }
        }
    }
    return false;
}

} // namespace fairdiv

#include "downlink/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "downlink/metrics.hpp"

namespace downlink {

const char* to_string(SelectionMode mode) {
    return mode == SelectionMode::NSGA2 ? "nsga2" : "crem";
}

SelectionMode parse_selection(const std::string& s) {
    if (s == "nsga2") return SelectionMode::NSGA2;
    if (s == "crem") return SelectionMode::CREM;
    throw std::invalid_argument("unknown selection mode: " + s);
}

void OperatorCounters::merge(const OperatorCounters& o) {
    insert_considered += o.insert_considered;
    insert_fired += o.insert_fired;
    insert_applied += o.insert_applied;
    mutation_considered += o.mutation_considered;
    mutation_fired += o.mutation_fired;
    swap_within_fired += o.swap_within_fired;
    swap_within_applied += o.swap_within_applied;
    swap_between_fired += o.swap_between_fired;
    reorder_moves += o.reorder_moves;
}

bool trigger(Rng& rng, double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw std::domain_error("trigger threshold must lie in [0,1]");
    return rng.uniform() > threshold;
}

int resolve_threads(int requested) {
    int cap = std::numeric_limits<int>::max();
    if (const char* env = std::getenv("DOWNLINK_SCHED_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) cap = v;
    }
    int n = requested;
    if (n <= 0) n = cap != std::numeric_limits<int>::max()
                        ? cap
                        : static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return std::max(1, std::min(n, cap));
}

namespace {

// Index-parallel loop; outputs must be written per index so the schedule of
// execution cannot matter.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

void refresh(Individual& ind, const DecodeContext& ctx) {
    ind.sched = decode(ind.chrom, ctx);
    ind.obj = evaluate(ind.sched, ctx);
}

}  // namespace

Individual initialize_individual(const DecodeContext& ctx, Rng& rng) {
    Individual ind;
    ind.chrom.scheduled.assign(ctx.oid_count(), 0);
    ind.chrom.assignment.assign(ctx.nt_count(), kUnassigned);
    const auto& win = ctx.instance().vtws;
    for (int i = 0; i < ctx.oid_count(); ++i) {
        if (rng.uniform() >= 0.5) continue;
        ind.chrom.scheduled[i] = 1;
        const auto& cands = ctx.oid_candidates(i);
        if (cands.empty()) continue;  // repaired to unscheduled by decode
        for (int j : ctx.family_segments(i))
            ind.chrom.assignment[j] = win[cands[rng.uniform_index(cands.size())]].id;
    }
    refresh(ind, ctx);
    return ind;
}

std::vector<Individual> initialize(const DecodeContext& ctx, int pop_size, std::uint64_t seed,
                                   int threads) {
    std::vector<Individual> pop(pop_size);
    parallel_for(pop_size, threads, [&](int i) {
        Rng rng = Rng::substream(seed, 0, static_cast<std::uint64_t>(i));
        pop[i] = initialize_individual(ctx, rng);
    });
    return pop;
}

void insert_operator(Individual& ind, const DecodeContext& ctx, double ir, Rng& rng,
                     OperatorCounters* counters) {
    PlanState st(ctx, ind.sched);
    std::vector<int> unscheduled;
    for (int i = 0; i < ctx.oid_count(); ++i)
        if (!st.is_active(i) && !ctx.family_segments(i).empty()) unscheduled.push_back(i);
    rng.shuffle(unscheduled);

    bool changed = false;
    for (int i : unscheduled) {
        if (counters) ++counters->insert_considered;
        if (!trigger(rng, ir)) continue;
        if (counters) ++counters->insert_fired;

        std::vector<int> placed;
        bool complete = true;
        for (int j : ctx.family_segments(i)) {
            bool found = false;
            for (int w : ctx.oid_candidates(i)) {
                if (st.can_place(j, w)) {
                    st.place(j, w);
                    placed.push_back(j);
                    found = true;
                    break;
                }
            }
            if (!found) {
                complete = false;
                break;
            }
        }
        if (complete) {
            st.set_active(i, true);
            changed = true;
            if (counters) ++counters->insert_applied;
        } else {
            for (int j : placed) st.unplace(j);
        }
    }
    if (changed) {
        ind.chrom = st.to_chromosome();
        refresh(ind, ctx);
    }
}

void reorder_operator(Individual& ind, const DecodeContext& ctx, OperatorCounters* counters) {
    PlanState st(ctx, ind.sched);
    bool changed = false;
    for (int i = 0; i < ctx.oid_count(); ++i) {
        if (!st.is_active(i)) continue;
        const auto& segs = ctx.family_segments(i);
        if (segs.size() < 2) continue;

        // the window already carrying the largest family share
        std::unordered_map<int, double> share;
        for (int j : segs) share[st.assignment(j)] += ctx.nt()[j].nd_s;
        if (share.size() < 2) continue;
        int target = -1;
        double best = -1.0;
        for (int j : segs) {
            const int w = st.assignment(j);
            if (share[w] > best || (share[w] == best && w < target)) {
                best = share[w];
                target = w;
            }
        }
        for (int j : segs) {
            const int src = st.assignment(j);
            if (src == target) continue;
            st.unplace(j);
            if (st.can_place(j, target)) {
                st.place(j, target);
                changed = true;
                if (counters) ++counters->reorder_moves;
            } else {
                st.place(j, src);
            }
        }
    }
    if (changed) {
        ind.chrom = st.to_chromosome();
        refresh(ind, ctx);
    }
}

void mutation_operator(Individual& ind, const DecodeContext& ctx, double mr, Rng& rng,
                       OperatorCounters* counters) {
    PlanState st(ctx, ind.sched);
    bool changed = false;
    for (int i = 0; i < ctx.oid_count(); ++i) {
        if (!st.is_active(i)) continue;
        if (counters) ++counters->mutation_considered;
        if (!trigger(rng, mr)) continue;
        if (counters) ++counters->mutation_fired;
        st.unschedule_family(i);
        changed = true;
    }
    if (changed) {
        ind.chrom = st.to_chromosome();
        refresh(ind, ctx);
    }
}

void swap_within(Individual& ind, const DecodeContext& ctx, Rng& rng,
                 OperatorCounters* counters) {
    PlanState st(ctx, ind.sched);
    std::vector<int> assigned;
    for (int j = 0; j < ctx.nt_count(); ++j)
        if (st.assignment(j) != kUnassigned) assigned.push_back(j);
    if (assigned.size() < 2) return;

    const int a = assigned[rng.uniform_index(assigned.size())];
    std::vector<int> others;
    for (int j : assigned)
        if (ctx.family_of(j) != ctx.family_of(a)) others.push_back(j);
    if (others.empty()) return;
    const int b = others[rng.uniform_index(others.size())];

    const int wa = st.assignment(a), wb = st.assignment(b);
    if (wa == wb) return;
    if (!ctx.is_candidate(ctx.family_of(a), wb) || !ctx.is_candidate(ctx.family_of(b), wa)) return;

    st.unplace(a);
    st.unplace(b);
    bool ok = false;
    if (st.can_place(a, wb)) {
        st.place(a, wb);
        if (st.can_place(b, wa)) {
            st.place(b, wa);
            ok = true;
        } else {
            st.unplace(a);
        }
    }
    if (!ok) {  // restore
        st.place(a, wa);
        st.place(b, wb);
        return;
    }
    if (counters) ++counters->swap_within_applied;
    ind.chrom = st.to_chromosome();
    refresh(ind, ctx);
}

std::pair<Individual, Individual> swap_between(const Individual& a, const Individual& b,
                                               const DecodeContext& ctx, Rng& rng) {
    if (a.chrom.scheduled.size() != b.chrom.scheduled.size() ||
        a.chrom.assignment.size() != b.chrom.assignment.size())
        throw std::invalid_argument("swap_between parents come from different instances");

    const int n = ctx.oid_count();
    Individual c1{a.chrom, {}, {}}, c2{b.chrom, {}, {}};
    const int cut = rng.uniform_int(0, n);  // families at index >= cut swap
    for (int i = cut; i < n; ++i) {
        std::swap(c1.chrom.scheduled[i], c2.chrom.scheduled[i]);
        for (int j : ctx.family_segments(i)) std::swap(c1.chrom.assignment[j], c2.chrom.assignment[j]);
    }
    refresh(c1, ctx);
    refresh(c2, ctx);
    return {std::move(c1), std::move(c2)};
}

std::vector<std::vector<int>> nondominated_sort(const std::vector<ObjectiveVector>& points) {
    const int n = static_cast<int>(points.size());
    std::vector<std::vector<int>> dominated(n);
    std::vector<int> dom_count(n, 0);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(points[p], points[q]))
                dominated[p].push_back(q);
            else if (dominates(points[q], points[p]))
                ++dom_count[p];
        }

    std::vector<std::vector<int>> fronts;
    std::vector<int> current;
    for (int p = 0; p < n; ++p)
        if (dom_count[p] == 0) current.push_back(p);
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<int> next;
        for (int p : current)
            for (int q : dominated[p])
                if (--dom_count[q] == 0) next.push_back(q);
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front) {
    const int n = static_cast<int>(front.size());
    if (n == 0) throw std::domain_error("crowding_distance needs a nonempty front");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, 0.0);

    auto accumulate = [&](auto key) {
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            if (key(front[a]) != key(front[b])) return key(front[a]) < key(front[b]);
            return a < b;
        });
        dist[idx.front()] = inf;
        dist[idx.back()] = inf;
        const double range = key(front[idx.back()]) - key(front[idx.front()]);
        if (range <= 0.0) return;
        for (int k = 1; k + 1 < n; ++k)
            if (dist[idx[k]] != inf)
                dist[idx[k]] += (key(front[idx[k + 1]]) - key(front[idx[k - 1]])) / range;
    };
    accumulate([](const ObjectiveVector& o) { return o.fr; });
    accumulate([](const ObjectiveVector& o) { return o.st; });
    return dist;
}

std::vector<int> elitist_select(const std::vector<ObjectiveVector>& pool, int k,
                                SelectionMode mode, Rng& rng) {
    const int n = static_cast<int>(pool.size());
    if (n == 0) throw std::domain_error("elitist_select needs a nonempty pool");
    if (n <= k) {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        return all;
    }
    if (mode == SelectionMode::CREM) {
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        rng.shuffle(idx);
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        return idx;
    }

    std::vector<int> out;
    for (const auto& front : nondominated_sort(pool)) {
        if (static_cast<int>(out.size()) + static_cast<int>(front.size()) <= k) {
            out.insert(out.end(), front.begin(), front.end());
            if (static_cast<int>(out.size()) == k) break;
            continue;
        }
        std::vector<ObjectiveVector> objs;
        objs.reserve(front.size());
        for (int i : front) objs.push_back(pool[i]);
        const auto dist = crowding_distance(objs);
        std::vector<int> order(front.size());
        for (std::size_t i = 0; i < front.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (dist[a] != dist[b]) return dist[a] > dist[b];
            return front[a] < front[b];
        });
        for (int i : order) {
            if (static_cast<int>(out.size()) == k) break;
            out.push_back(front[i]);
        }
        break;
    }
    return out;
}

std::vector<int> box_combine_filter(const std::vector<ObjectiveVector>& best,
                                    const std::vector<ObjectiveVector>& offspring, int grid) {
    if (grid < 1) throw std::domain_error("box grid must be positive");
    const int nb = static_cast<int>(best.size());

    auto box_of = [grid](const ObjectiveVector& o) {
        const int ix = std::min(grid - 1, static_cast<int>(o.fr * grid));
        const int iy = std::min(grid - 1, static_cast<int>(o.st * grid));
        return ix * grid + iy;
    };

    std::vector<ObjectiveVector> pool(best);
    std::vector<std::uint8_t> alive(nb, 1);
    std::vector<int> nd;  // nondominated positions, ascending
    for (int p = 0; p < nb; ++p) {
        bool dominated_p = false;
        for (int q = 0; q < nb && !dominated_p; ++q)
            if (q != p && (dominates(best[q], best[p]) || (best[q] == best[p] && q < p)))
                dominated_p = true;
        if (!dominated_p) nd.push_back(p);
    }
    std::unordered_map<int, int> boxmap;  // box -> incumbent position
    for (int p : nd) boxmap.try_emplace(box_of(pool[p]), p);

    auto admit = [&](const ObjectiveVector& o, int pos, int box) {
        // members newly dominated by o lose nondominated status (and boxes)
        std::vector<int> keep;
        keep.reserve(nd.size() + 1);
        for (int p : nd) {
            if (dominates(o, pool[p])) {
                auto it = boxmap.find(box_of(pool[p]));
                if (it != boxmap.end() && it->second == p) boxmap.erase(it);
            } else {
                keep.push_back(p);
            }
        }
        keep.push_back(pos);
        nd = std::move(keep);
        boxmap[box] = pos;
    };

    for (const ObjectiveVector& o : offspring) {
        const int pos = static_cast<int>(pool.size());
        bool rejected = false;
        for (int p : nd)
            if (dominates(pool[p], o)) {
                rejected = true;
                break;
            }
        if (rejected) {
            pool.push_back(o);
            alive.push_back(0);
            continue;
        }
        const int box = box_of(o);
        auto it = boxmap.find(box);
        if (it != boxmap.end()) {
            const int incumbent = it->second;
            if (dominates(o, pool[incumbent])) {
                alive[incumbent] = 0;
                nd.erase(std::find(nd.begin(), nd.end(), incumbent));
                boxmap.erase(it);
                pool.push_back(o);
                alive.push_back(1);
                admit(o, pos, box);
            } else {
                pool.push_back(o);
                alive.push_back(0);
            }
        } else {
            pool.push_back(o);
            alive.push_back(1);
            admit(o, pos, box);
        }
    }

    std::vector<int> kept;
    for (int p = 0; p < static_cast<int>(pool.size()); ++p)
        if (alive[p]) kept.push_back(p);
    return kept;
}

std::vector<Individual> box_combine(const std::vector<Individual>& best,
                                    const std::vector<Individual>& offspring, int grid) {
    std::vector<ObjectiveVector> b, o;
    b.reserve(best.size());
    o.reserve(offspring.size());
    for (const auto& x : best) b.push_back(x.obj);
    for (const auto& x : offspring) o.push_back(x.obj);
    std::vector<Individual> pool;
    for (int p : box_combine_filter(b, o, grid))
        pool.push_back(p < static_cast<int>(best.size()) ? best[p]
                                                         : offspring[p - best.size()]);
    return pool;
}

namespace {

double front_hv(const std::vector<Individual>& pop, const ObjectiveVector& ref) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(pop.size());
    for (const auto& ind : pop) objs.push_back(ind.obj);
    return hypervolume(pareto_front(objs), ref);
}

constexpr std::uint64_t kPopulationStream = 1ull << 40;

}  // namespace

RunTrace run(const DecodeContext& ctx, const EvolutionConfig& cfg) {
    if (cfg.pop_size < 2 || cfg.archive_size < 2)
        throw std::invalid_argument("population and archive sizes must be at least 2");
    if (cfg.insert_rate < 0.0 || cfg.insert_rate > 1.0 || cfg.mutation_rate < 0.0 ||
        cfg.mutation_rate > 1.0)
        throw std::invalid_argument("rates must lie in [0,1]");
    if (cfg.max_iter < 0) throw std::invalid_argument("max_iter must be non-negative");
    if (cfg.box_grid < 1) throw std::invalid_argument("box grid must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    const int threads = resolve_threads(cfg.threads);

    RunTrace trace;
    std::vector<Individual> pop(cfg.pop_size);
    std::vector<OperatorCounters> local(cfg.pop_size);
    parallel_for(cfg.pop_size, threads, [&](int i) {
        Rng rng = Rng::substream(cfg.seed, 0, static_cast<std::uint64_t>(i));
        pop[i] = initialize_individual(ctx, rng);
        insert_operator(pop[i], ctx, cfg.insert_rate, rng, &local[i]);
        reorder_operator(pop[i], ctx, &local[i]);
        pop[i].obj = evaluate(pop[i].sched, ctx);
    });
    for (const auto& c : local) trace.counters.merge(c);

    Rng init_rng = Rng::substream(cfg.seed, 0, kPopulationStream);
    std::vector<ObjectiveVector> objs;
    for (const auto& ind : pop) objs.push_back(ind.obj);
    std::vector<Individual> best;
    for (int i : elitist_select(objs, cfg.archive_size, cfg.selection, init_rng))
        best.push_back(pop[i]);
    trace.initial_hv = front_hv(best, cfg.ref);

    for (int gen = 1; gen <= cfg.max_iter; ++gen) {
        Rng gen_rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(gen), kPopulationStream);

        std::vector<Individual> offspring(cfg.pop_size);
        for (int i = 0; i < cfg.pop_size; ++i) offspring[i] = best[i % best.size()];

        std::vector<Rng> streams;
        streams.reserve(cfg.pop_size);
        for (int i = 0; i < cfg.pop_size; ++i)
            streams.push_back(Rng::substream(cfg.seed, static_cast<std::uint64_t>(gen),
                                             static_cast<std::uint64_t>(i)));
        std::fill(local.begin(), local.end(), OperatorCounters{});

        parallel_for(cfg.pop_size, threads, [&](int i) {
            mutation_operator(offspring[i], ctx, cfg.mutation_rate, streams[i], &local[i]);
        });

        // pairwise crossover over shuffled offspring, gated by MR
        std::vector<int> order(cfg.pop_size);
        for (int i = 0; i < cfg.pop_size; ++i) order[i] = i;
        gen_rng.shuffle(order);
        for (int k = 0; k + 1 < cfg.pop_size; k += 2) {
            if (!trigger(gen_rng, cfg.mutation_rate)) continue;
            trace.counters.swap_between_fired += 1;
            auto [c1, c2] = swap_between(offspring[order[k]], offspring[order[k + 1]], ctx, gen_rng);
            offspring[order[k]] = std::move(c1);
            offspring[order[k + 1]] = std::move(c2);
        }

        parallel_for(cfg.pop_size, threads, [&](int i) {
            if (trigger(streams[i], cfg.mutation_rate)) {
                ++local[i].swap_within_fired;
                swap_within(offspring[i], ctx, streams[i], &local[i]);
            }
            insert_operator(offspring[i], ctx, cfg.insert_rate, streams[i], &local[i]);
            reorder_operator(offspring[i], ctx, &local[i]);
            offspring[i].obj = evaluate(offspring[i].sched, ctx);
        });
        for (const auto& c : local) trace.counters.merge(c);

        std::vector<Individual> pool = box_combine(best, offspring, cfg.box_grid);
        std::vector<ObjectiveVector> pool_objs;
        pool_objs.reserve(pool.size());
        for (const auto& ind : pool) pool_objs.push_back(ind.obj);
        std::vector<Individual> survivors;
        for (int i : elitist_select(pool_objs, cfg.archive_size, cfg.selection, gen_rng))
            survivors.push_back(pool[i]);
        best = std::move(survivors);

        trace.hv.push_back(front_hv(best, cfg.ref));
    }

    trace.archive = std::move(best);
    trace.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return trace;
}

}  // namespace downlink

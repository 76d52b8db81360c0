#include "oracle.hpp"

#include <limits>
#include <map>
#include <stdexcept>

namespace oracle {

std::vector<double> null_weights(const Grid& g) {
    std::vector<double> w(g.width, 0.0);
    for (std::size_t col = 0; col < g.width; ++col) {
        std::map<std::string, std::uint64_t> counts;
        std::uint64_t filled = 0;
        for (const auto& row : g.rows) {
            if (!row[col].has_value()) continue;
            ++counts[*row[col]];
            ++filled;
        }
        if (filled < 2) continue;
        const std::uint64_t all = filled * (filled - 1) / 2;
        std::uint64_t same = 0;
        for (const auto& [value, c] : counts) same += c * (c - 1) / 2;
        w[col] = static_cast<double>(all - same) / static_cast<double>(all);
    }
    return w;
}

double pair_score(const Grid& g, const std::vector<double>& w, std::size_t a,
                  std::size_t b) {
    double sum = 0.0;
    for (std::size_t col = 0; col < g.width; ++col) {
        const Cell& x = g.rows[a][col];
        const Cell& y = g.rows[b][col];
        if (x.has_value() && y.has_value())
            sum += (*x == *y) ? 0.0 : 1.0;
        else if (x.has_value() != y.has_value())
            sum += w[col];
        // both null: nothing
    }
    return sum / static_cast<double>(g.width);
}

double row_novelty(const Grid& g, const std::vector<double>& w, std::size_t row) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < g.rows.size(); ++r) {
        if (r == row) continue;
        const double v = pair_score(g, w, row, r);
        if (v < best) best = v;
    }
    return best;
}

double grid_score(const Grid& g) {
    if (g.rows.size() < 2) throw std::invalid_argument("need two rows to score");
    const auto w = null_weights(g);
    double sum = 0.0;
    for (std::size_t r = 0; r < g.rows.size(); ++r) sum += row_novelty(g, w, r);
    return sum / static_cast<double>(g.rows.size());
}

Grid combine(const Grid& query, const std::vector<Grid>& cands,
             const std::vector<std::vector<int>>& maps,
             const std::vector<std::size_t>& chosen) {
    Grid out;
    out.width = query.width;
    out.rows = query.rows;
    for (const std::size_t j : chosen) {
        for (const auto& row : cands[j].rows) {
            std::vector<Cell> pushed(query.width);
            for (std::size_t i = 0; i < query.width; ++i)
                if (maps[j][i] >= 0) pushed[i] = row[static_cast<std::size_t>(maps[j][i])];
            out.rows.push_back(std::move(pushed));
        }
    }
    return out;
}

std::pair<std::vector<std::size_t>, double> best_subset(
    const Grid& query, const std::vector<Grid>& cands,
    const std::vector<std::vector<int>>& maps, std::size_t l) {
    const std::size_t k = cands.size();
    if (l < 1 || l > k) throw std::invalid_argument("bad subset size");

    std::vector<std::size_t> pick(l);
    for (std::size_t i = 0; i < l; ++i) pick[i] = i;

    std::vector<std::size_t> best_pick;
    double best = -std::numeric_limits<double>::infinity();
    while (true) {
        const double score = grid_score(combine(query, cands, maps, pick));
        if (score > best) {
            best = score;
            best_pick = pick;
        }
        // advance to the next combination
        std::size_t i = l;
        while (i > 0) {
            --i;
            if (pick[i] != i + k - l) break;
            if (i == 0) return {best_pick, best};
        }
        ++pick[i];
        for (std::size_t j = i + 1; j < l; ++j) pick[j] = pick[j - 1] + 1;
    }
}

std::uint64_t Rng::next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t Rng::below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

Cell random_cell(Rng& rng) {
    if (rng.unit() < 0.2) return std::nullopt;
    return std::string("v") + static_cast<char>('0' + rng.below(6));
}

Grid random_grid(Rng& rng, std::size_t width, std::size_t max_rows) {
    Grid g;
    g.width = width;
    const std::size_t rows = 1 + rng.below(max_rows);
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<Cell> row(width);
        for (auto& cell : row) cell = random_cell(rng);
        g.rows.push_back(std::move(row));
    }
    return g;
}

}  // namespace

Instance random_instance(std::uint64_t seed, std::size_t max_cands, bool full_coverage) {
    Rng rng(seed);
    Instance inst;
    const std::size_t qw = 2 + rng.below(3);
    inst.query = random_grid(rng, qw, 5);
    if (inst.query.rows.size() < 2) inst.query.rows.push_back(inst.query.rows.front());

    const std::size_t m = 1 + rng.below(max_cands);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t mapped = full_coverage ? qw : 1 + rng.below(qw);
        std::vector<std::size_t> qcols(qw);
        for (std::size_t i = 0; i < qw; ++i) qcols[i] = i;
        for (std::size_t i = qw; i > 1; --i)
            std::swap(qcols[i - 1], qcols[rng.below(i)]);
        qcols.resize(mapped);

        const std::size_t width = mapped + rng.below(2);
        inst.cands.push_back(random_grid(rng, width, 6));
        std::vector<int> map(qw, -1);
        int next_col = 0;
        for (const std::size_t qc : qcols) map[qc] = next_col++;
        inst.maps.push_back(std::move(map));
    }
    return inst;
}

}  // namespace oracle

#include "causalmcmc/mallows.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace causalmcmc {

namespace {

// Counts inversions of seq in place; merge sort.
long long count_inversions(std::vector<int>& seq, std::vector<int>& buffer, int lo, int hi) {
    if (hi - lo <= 1) return 0;
    const int mid = lo + (hi - lo) / 2;
    long long inversions =
        count_inversions(seq, buffer, lo, mid) + count_inversions(seq, buffer, mid, hi);
    int a = lo, b = mid, out = lo;
    while (a < mid && b < hi) {
        if (seq[a] <= seq[b]) {
            buffer[out++] = seq[a++];
        } else {
            inversions += mid - a;
            buffer[out++] = seq[b++];
        }
    }
    while (a < mid) buffer[out++] = seq[a++];
    while (b < hi) buffer[out++] = seq[b++];
    for (int i = lo; i < hi; ++i) seq[i] = buffer[i];
    return inversions;
}

}  // namespace

MallowsParams MallowsParams::from_eta(double eta, NodeOrdering reference) {
    if (!(eta > 0.0)) throw std::invalid_argument("MallowsParams: eta must be > 0");
    const double log_phi = -1.0 / eta;
    return MallowsParams{eta, std::exp(log_phi), log_phi, std::move(reference)};
}

MallowsParams MallowsParams::from_phi(double phi, NodeOrdering reference) {
    if (!(phi > 0.0) || phi > 1.0) throw std::invalid_argument("MallowsParams: phi must be in (0, 1]");
    const double eta = phi == 1.0 ? std::numeric_limits<double>::infinity() : -1.0 / std::log(phi);
    return MallowsParams{eta, phi, std::log(phi), std::move(reference)};
}

int kendall_distance(const NodeOrdering& a, const NodeOrdering& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("kendall_distance: orderings differ in length");
    const int p = a.size();
    // Rank each element of a by its position in b; the Kendall distance is the
    // inversion count of that sequence.
    std::vector<int> seq(p), buffer(p);
    for (int q = 0; q < p; ++q) seq[q] = b.position_of(a.node_at(q));
    return static_cast<int>(count_inversions(seq, buffer, 0, p));
}

double mallows_log_normalizer(int p, double phi) {
    double log_z = 0.0;
    for (int j = 1; j <= p; ++j) {
        double term = 0.0, power = 1.0;
        for (int r = 0; r < j; ++r) {
            term += power;
            power *= phi;
        }
        log_z += std::log(term);
    }
    return log_z;
}

double mallows_log_density(const NodeOrdering& candidate, const MallowsParams& params) {
    const int d = kendall_distance(candidate, params.reference);
    // phi = 1 makes every ordering equally likely (d * log_phi = 0).
    return d * params.log_phi - mallows_log_normalizer(params.reference.size(), params.phi);
}

NodeOrdering mallows_sample(const MallowsParams& params, Rng& rng) {
    const int p = params.reference.size();
    std::vector<int> partial;
    partial.reserve(p);
    std::vector<double> weight;  // weight[r] = phi^r, displacement from the end
    weight.reserve(p);
    weight.push_back(1.0);
    for (int j = 0; j < p; ++j) {
        double total = 0.0;
        for (int r = 0; r <= j; ++r) total += weight[r];
        const double u = rng.uniform() * total;
        double cumulative = 0.0;
        int displacement = j;
        for (int r = 0; r <= j; ++r) {
            cumulative += weight[r];
            if (u < cumulative) {
                displacement = r;
                break;
            }
        }
        partial.insert(partial.end() - displacement, params.reference.node_at(j));
        weight.push_back(weight.back() * params.phi);
    }
    return NodeOrdering(std::move(partial));
}

NodeOrdering mallows_sample(const MallowsParams& params, std::uint64_t seed) {
    Rng rng(seed);
    return mallows_sample(params, rng);
}

}  // namespace causalmcmc

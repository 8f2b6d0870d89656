// SPDX-License-Identifier: Apache-2.0
//
// riscc - RIS-assisted multi-antenna coded caching toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Random channel realizations for a RIS-assisted downlink. Direct Tx-Rx
// paths are blocked; every path runs Tx antenna -> RIS unit -> receiver,
// so only the two hop matrices are drawn. Users, antennas and RIS units
// are addressed with 1-based labels throughout the public API.

#ifndef riscc_channel_H
#define riscc_channel_H

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace riscc
{

// Normal variates via Box-Muller on top of mt19937_64. std::normal_distribution
// is not bit-identical across standard libraries; this is, which makes channel
// realizations reproducible from the seed alone on any platform.
class GaussianSource
{
  public:
    explicit GaussianSource(std::uint64_t seed) : eng(seed) {}

    // One draw = exactly two engine words.
    std::pair<double, double> normal_pair()
    {
        double u1 = double((eng() >> 11) + 1) * 0x1.0p-53; // in (0,1], keeps the log finite
        double u2 = double(eng() >> 11) * 0x1.0p-53;       // in [0,1)
        double rad = std::sqrt(-2.0 * std::log(u1));
        double ang = 2.0 * M_PI * u2;
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

    // Circularly-symmetric complex Gaussian with unit total variance.
    std::complex<double> standard_complex()
    {
        auto [re, im] = normal_pair();
        return {re * M_SQRT1_2, im * M_SQRT1_2};
    }

  private:
    std::mt19937_64 eng;
};

struct ChannelRealization
{
    int L = 0;             // transmit antennas
    int K = 0;             // users
    int G = 0;             // RIS units
    std::uint64_t seed = 0;
    Eigen::MatrixXcd h_tx; // G x L, unit-to-antenna hop
    Eigen::MatrixXcd h_rx; // G x K, unit-to-user hop
};

// Draws both hop matrices i.i.d. CN(0,1). Fill order (h_tx column by column,
// then h_rx column by column) is part of the reproducibility contract.
inline ChannelRealization draw_channel(int L, int K, int G, std::uint64_t seed)
{
    if (L < 1 || K < 1 || G < 1)
        throw std::invalid_argument("draw_channel: L, K, G must all be >= 1 (got L=" + std::to_string(L) +
                                    ", K=" + std::to_string(K) + ", G=" + std::to_string(G) + ")");
    ChannelRealization ch;
    ch.L = L, ch.K = K, ch.G = G, ch.seed = seed;
    ch.h_tx.resize(G, L);
    ch.h_rx.resize(G, K);
    GaussianSource src(seed);
    for (int j = 0; j < L; ++j)
        for (int g = 0; g < G; ++g)
            ch.h_tx(g, j) = src.standard_complex();
    for (int k = 0; k < K; ++k)
        for (int g = 0; g < G; ++g)
            ch.h_rx(g, k) = src.standard_complex();
    return ch;
}

// Cascaded coefficients of the G single-reflection paths between antenna j
// and user k: entry g is h_tx(g,j) * h_rx(g,k).
inline Eigen::VectorXcd cascade_vector(const ChannelRealization &ch, int user, int antenna)
{
    if (user < 1 || user > ch.K)
        throw std::out_of_range("cascade_vector: user " + std::to_string(user) + " outside [1," + std::to_string(ch.K) + "]");
    if (antenna < 1 || antenna > ch.L)
        throw std::out_of_range("cascade_vector: antenna " + std::to_string(antenna) + " outside [1," + std::to_string(ch.L) + "]");
    return ch.h_tx.col(antenna - 1).cwiseProduct(ch.h_rx.col(user - 1));
}

// End-to-end gain a^T v under RIS phase configuration v. Plain transpose,
// no conjugation (Eigen's dot() conjugates, hence cwiseProduct + sum).
inline std::complex<double> effective_gain(const ChannelRealization &ch, const Eigen::VectorXcd &v, int user, int antenna)
{
    if (v.size() != ch.G)
        throw std::invalid_argument("effective_gain: phase vector has " + std::to_string(v.size()) +
                                    " entries, channel has G=" + std::to_string(ch.G));
    return cascade_vector(ch, user, antenna).cwiseProduct(v).sum();
}

} // namespace riscc

#endif

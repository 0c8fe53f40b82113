// Brute-force reference evaluator: expectation values of smeared-field
// products in a truncated number basis with explicit ladder matrices.
// Independent of the pairing-enumeration path it checks; the only shared
// ingredient is the elementary contraction used to build the Gram matrix.
#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "bellfield/wick.hpp"

namespace bellfield {

class FockOracle {
  public:
    // distinct packets spanning the mode space; max_quanta must cover the
    // deepest intermediate state of the monomials to be evaluated
    FockOracle(const std::vector<OnShellAmplitude>& packets, const Mass& m,
               int max_quanta)
        : packets_(packets), modes_(static_cast<int>(packets.size())) {
        // Gram matrix of the packets under the contraction inner product
        const int n = modes_;
        std::vector<std::vector<cplx>> gram(n, std::vector<cplx>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                gram[i][j] = contraction(packets[i], packets[j], m);

        // complex Cholesky G = L L^dagger; row i of conj(L) gives the
        // coefficients of packet i in an orthonormal mode basis
        std::vector<std::vector<cplx>> l(n, std::vector<cplx>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) {
                cplx s = gram[i][j];
                for (int k = 0; k < j; ++k) s -= l[i][k] * std::conj(l[j][k]);
                if (i == j) {
                    if (!(s.real() > 1e-12))
                        throw std::runtime_error(
                            "FockOracle: packets nearly dependent");
                    l[i][i] = std::sqrt(s.real());
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
        }
        coeff_.resize(n, std::vector<cplx>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) coeff_[i][j] = std::conj(l[i][j]);

        build_states(max_quanta);
        build_field_matrices();
    }

    // <0| prod_k phi[packet index_k] |0>
    cplx vacuum_expectation(const std::vector<int>& indices) const {
        const std::size_t dim = states_.size();
        std::vector<cplx> vec(dim, 0.0);
        vec[vacuum_] = 1.0;
        for (auto it = indices.rbegin(); it != indices.rend(); ++it)
            vec = apply(fields_.at(*it), vec);
        return vec[vacuum_];
    }

  private:
    using Matrix = std::vector<std::vector<cplx>>;

    void build_states(int max_quanta) {
        std::vector<int> occ(modes_, 0);
        enumerate(occ, 0, max_quanta);
        for (std::size_t s = 0; s < states_.size(); ++s)
            index_[states_[s]] = s;
        vacuum_ = index_.at(std::vector<int>(modes_, 0));
    }

    void enumerate(std::vector<int>& occ, int mode, int budget) {
        if (mode == modes_) {
            states_.push_back(occ);
            return;
        }
        for (int q = 0; q <= budget; ++q) {
            occ[mode] = q;
            enumerate(occ, mode + 1, budget - q);
        }
        occ[mode] = 0;
    }

    void build_field_matrices() {
        const std::size_t dim = states_.size();
        for (int p = 0; p < modes_; ++p) {
            Matrix mat(dim, std::vector<cplx>(dim, 0.0));
            for (std::size_t s = 0; s < dim; ++s) {
                for (int mode = 0; mode < modes_; ++mode) {
                    // creation: c_mode a*_mode
                    std::vector<int> up = states_[s];
                    ++up[mode];
                    if (auto it = index_.find(up); it != index_.end())
                        mat[it->second][s] += coeff_[p][mode] *
                                              std::sqrt(double(up[mode]));
                    // annihilation: conj(c_mode) a_mode
                    if (states_[s][mode] > 0) {
                        std::vector<int> down = states_[s];
                        --down[mode];
                        mat[index_.at(down)][s] +=
                            std::conj(coeff_[p][mode]) *
                            std::sqrt(double(states_[s][mode]));
                    }
                }
            }
            fields_[p] = std::move(mat);
        }
    }

    static std::vector<cplx> apply(const Matrix& m, const std::vector<cplx>& v) {
        std::vector<cplx> out(v.size(), 0.0);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
        return out;
    }

    std::vector<OnShellAmplitude> packets_;
    int modes_;
    std::vector<std::vector<cplx>> coeff_;
    std::vector<std::vector<int>> states_;
    std::map<std::vector<int>, std::size_t> index_;
    std::size_t vacuum_ = 0;
    std::map<int, Matrix> fields_;
};

}  // namespace bellfield

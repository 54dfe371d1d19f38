#include "conekit/weight.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace conekit {

Complex WeightJet::operator()(JetKey slots) const {
    std::sort(slots.begin(), slots.end());
    auto it = parts.find(slots);
    return it == parts.end() ? Complex(0.0) : it->second;
}

void for_each_partition(const std::vector<JetSlot>& items,
                        const std::function<void(const std::vector<std::vector<JetSlot>>&)>& fn) {
    std::vector<std::vector<JetSlot>> blocks;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == items.size()) {
            fn(blocks);
            return;
        }
        const std::size_t existing = blocks.size();
        for (std::size_t bi = 0; bi < existing; ++bi) {
            blocks[bi].push_back(items[i]);
            rec(i + 1);
            blocks[bi].pop_back();
        }
        blocks.push_back({items[i]});
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
}

HermitianWeight HermitianWeight::constant(double c, int n) {
    HermitianWeight w;
    w.n_ = n;
    w.scale_ = c;
    w.kappa_.assign(n, 0.0);
    w.lin_.assign(n, Complex(0.0));
    w.quad_.assign(n, Complex(0.0));
    w.trig_amp_.assign(n, 0.0);
    w.trig_freq_.assign(n, 0.0);
    return w;
}

HermitianWeight HermitianWeight::exp_poly(int n, std::vector<double> kappa,
                                          std::vector<Complex> lin, std::vector<Complex> quad,
                                          std::vector<double> trig_amp,
                                          std::vector<double> trig_freq) {
    HermitianWeight w = constant(1.0, n);
    auto fit = [n](auto& v, auto zero) { v.resize(n, zero); };
    w.kappa_ = std::move(kappa);
    fit(w.kappa_, 0.0);
    w.lin_ = std::move(lin);
    fit(w.lin_, Complex(0.0));
    w.quad_ = std::move(quad);
    fit(w.quad_, Complex(0.0));
    w.trig_amp_ = std::move(trig_amp);
    fit(w.trig_amp_, 0.0);
    w.trig_freq_ = std::move(trig_freq);
    fit(w.trig_freq_, 0.0);
    return w;
}

HermitianWeight HermitianWeight::from_name(const std::string& name, int n, double param) {
    if (name == "unit") return unit(n);
    if (name == "const") return constant(param == 0.0 ? 1.0 : param, n);
    if (name == "adapted_gauss") {
        std::vector<double> kappa(n, param == 0.0 ? 0.5 : param);
        return exp_poly(n, kappa);
    }
    if (name == "generic_exp") {
        std::vector<double> kappa(n, 0.4);
        std::vector<Complex> lin(n, Complex(0.3, 0.1));
        std::vector<Complex> quad(n, Complex(0.1, -0.05));
        return exp_poly(n, kappa, lin, quad);
    }
    if (name == "ripple") {
        std::vector<double> kappa(n, 0.2), amp(n, 0.0), freq(n, 0.0);
        if (n > 1) {
            amp[1] = param == 0.0 ? 0.3 : param;
            freq[1] = 1.0;
        }
        return exp_poly(n, kappa, {}, {}, amp, freq);
    }
    throw InvalidParams("unknown weight '" + name + "'");
}

HermitianWeight HermitianWeight::scaled(double factor) const {
    if (!(factor > 0.0)) throw InvalidParams("weight scale factor must be positive");
    HermitianWeight w = *this;
    w.scale_ *= factor;
    return w;
}

bool HermitianWeight::adapted_at_origin() const {
    if (scale_ != 1.0) return false;
    for (int j = 0; j < n_; ++j) {
        if (lin_[j] != Complex(0.0) || quad_[j] != Complex(0.0)) return false;
        if (trig_amp_[j] != 0.0) return false;  // cos contributes value and z^2-terms at 0
    }
    return true;
}

WeightJet HermitianWeight::jet(const Eigen::VectorXcd& z) const {
    // jet of the exponent q first; only a handful of its partials are nonzero
    // except for the trig part, which contributes at every order
    auto q_part = [&](const JetKey& key) -> Complex {
        if (key.empty()) {
            Complex s(0.0);
            for (int j = 0; j < n_; ++j) {
                double x2 = 2.0 * z[j].real();
                s += kappa_[j] * std::norm(z[j]) + 2.0 * (lin_[j] * z[j]).real() +
                     2.0 * (quad_[j] * z[j] * z[j]).real();
                if (trig_amp_[j] != 0.0) s += trig_amp_[j] * std::cos(trig_freq_[j] * x2);
            }
            return s;
        }
        int j = key[0].idx;
        for (const auto& s : key)
            if (s.idx != j) return 0.0;  // q is a sum over directions
        Complex poly(0.0);
        if (key.size() == 1) {
            poly = key[0].bar ? kappa_[j] * z[j] + std::conj(lin_[j]) + 2.0 * std::conj(quad_[j]) * std::conj(z[j])
                              : kappa_[j] * std::conj(z[j]) + lin_[j] + 2.0 * quad_[j] * z[j];
        } else if (key.size() == 2) {
            if (key[0].bar != key[1].bar) poly = kappa_[j];
            else poly = key[0].bar ? 2.0 * std::conj(quad_[j]) : 2.0 * quad_[j];
        }
        Complex trig(0.0);
        if (trig_amp_[j] != 0.0) {
            // each slot derivative of cos(w*(z+zbar)) multiplies by w and
            // advances the phase by a quarter turn
            double w = trig_freq_[j];
            double arg = w * 2.0 * z[j].real();
            int m = int(key.size());
            double wm = std::pow(w, m);
            switch (m % 4) {
                case 0: trig = wm * std::cos(arg); break;
                case 1: trig = -wm * std::sin(arg); break;
                case 2: trig = -wm * std::cos(arg); break;
                case 3: trig = wm * std::sin(arg); break;
            }
        }
        return poly + trig;
    };

    double a0 = scale_ * std::exp(q_part({}).real());

    WeightJet out;
    // enumerate every derivative multiset up to total order 4
    std::vector<JetKey> keys;
    std::vector<JetSlot> alphabet;
    for (int j = 0; j < n_; ++j) {
        alphabet.push_back({j, false});
        alphabet.push_back({j, true});
    }
    std::function<void(std::size_t, JetKey&)> gen = [&](std::size_t start, JetKey& cur) {
        keys.push_back(cur);
        if (cur.size() == 4) return;
        for (std::size_t i = start; i < alphabet.size(); ++i) {
            cur.push_back(alphabet[i]);
            gen(i, cur);
            cur.pop_back();
        }
    };
    JetKey cur;
    gen(0, cur);

    for (const auto& key : keys) {
        if (key.empty()) {
            out.parts[key] = a0;
            continue;
        }
        Complex sum(0.0);
        for_each_partition(key, [&](const std::vector<std::vector<JetSlot>>& blocks) {
            Complex prod(1.0);
            for (auto b : blocks) {
                std::sort(b.begin(), b.end());
                prod *= q_part(b);
                if (prod == Complex(0.0)) return;
            }
            sum += prod;
        });
        if (sum != Complex(0.0)) out.parts[key] = a0 * sum;
    }
    return out;
}

}  // namespace conekit

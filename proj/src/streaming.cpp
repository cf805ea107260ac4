#include "wavesyn/streaming.hpp"

#include <cmath>
#include <stdexcept>

namespace wavesyn {

namespace {

std::vector<double> scaled(const std::vector<double>& h, double factor) {
    std::vector<double> out(h.size());
    for (size_t k = 0; k < h.size(); ++k) out[k] = factor * h[k];
    return out;
}

}  // namespace

StreamingCascade::StreamingCascade(std::int64_t n, const FilterBank& fb,
                                   Scaling scaling, Emit emit)
    : n_(n), fb_(fb), emit_(std::move(emit)) {
    num_levels_ = log2_exact(n);
    if (n < 2) throw std::invalid_argument("signal length must be >= 2");
    double factor = 1.0;
    if (scaling == Scaling::AScaled) factor = 1.0 / std::sqrt(2.0);
    if (scaling == Scaling::BScaled) factor = std::sqrt(2.0);
    h_ = scaled(fb.h, factor);
    g_ = scaled(fb.g, factor);
    levels_.resize(num_levels_);
}

std::int64_t StreamingCascade::live_values() const {
    std::int64_t total = 0;
    for (const Level& lv : levels_)
        total += static_cast<std::int64_t>(lv.head.size() + lv.window.size());
    return total;
}

void StreamingCascade::push(double value) {
    if (finalized_) throw std::logic_error("push after finalize");
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite input");
    if (pushed_ >= n_) throw std::logic_error("more than n values pushed");
    ++pushed_;
    feed(0, value);
    peak_live_ = std::max(peak_live_, live_values());
}

void StreamingCascade::feed(int level, double value) {
    if (level == num_levels_) {  // length-1 remainder: the root scaling value
        emit_(WaveletIndex::root(n_), value);
        return;
    }
    Level& lv = levels_[level];
    const std::int64_t len = n_ >> level;
    const int taps = static_cast<int>(h_.size());
    const std::int64_t head_size = std::min<std::int64_t>(taps - 2, len);
    if (lv.received < head_size) lv.head.push_back(value);
    lv.window.push_back(value);
    ++lv.received;

    // Emit every output whose (non-wrapped) analysis window is complete.
    while (2 * lv.next_t + taps - 1 < len && lv.received > 2 * lv.next_t + taps - 1) {
        const std::int64_t t = lv.next_t;
        double av = 0.0, dv = 0.0;
        for (int k = 0; k < taps; ++k) {
            const double s = lv.window[2 * t + k - lv.start];
            av += h_[k] * s;
            dv += g_[k] * s;
        }
        ++lv.next_t;
        while (lv.start < 2 * lv.next_t && !lv.window.empty()) {
            lv.window.pop_front();
            ++lv.start;
        }
        emit_(WaveletIndex::detail(level + 1, t, n_), dv);
        feed(level + 1, av);
    }
    if (lv.received == len) flush_wrapped(level);
}

void StreamingCascade::flush_wrapped(int level) {
    Level& lv = levels_[level];
    const std::int64_t len = n_ >> level;
    if (lv.received < len) return;  // nothing wrapped yet to close
    const int taps = static_cast<int>(h_.size());
    while (lv.next_t < len / 2) {
        const std::int64_t t = lv.next_t;
        double av = 0.0, dv = 0.0;
        for (int k = 0; k < taps; ++k) {
            const std::int64_t idx = (2 * t + k) % len;
            double s;
            if (idx >= lv.start) {
                s = lv.window[idx - lv.start];
            } else {
                s = lv.head[idx];
            }
            av += h_[k] * s;
            dv += g_[k] * s;
        }
        ++lv.next_t;
        emit_(WaveletIndex::detail(level + 1, t, n_), dv);
        feed(level + 1, av);
    }
    lv.window.clear();
    lv.head.clear();
}

void StreamingCascade::finalize() {
    if (finalized_) throw std::logic_error("finalize called twice");
    if (pushed_ != n_) throw std::logic_error("finalize before n values pushed");
    finalized_ = true;
    for (int level = 0; level < num_levels_; ++level) flush_wrapped(level);
}

}  // namespace wavesyn

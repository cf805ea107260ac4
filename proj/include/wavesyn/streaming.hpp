#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

#include "wavesyn/transform.hpp"

namespace wavesyn {

/// One-pass cascade over a signal delivered in index order.  Detail
/// coefficients are emitted as soon as their analysis window closes;
/// windows that wrap around the periodic boundary are completed at
/// finalize() from the first 2q-2 samples retained per level.  Live
/// state is O(q) values per level.
class StreamingCascade {
  public:
    /// Callback receives each coefficient as it is produced.  The root
    /// scaling coefficient is delivered last (at finalize).
    using Emit = std::function<void(const WaveletIndex&, double value)>;

    StreamingCascade(std::int64_t n, const FilterBank& fb, Scaling scaling,
                     Emit emit);

    void push(double value);
    /// Flushes wrapped windows and the root coefficient.  Must be
    /// called exactly once, after n pushes.
    void finalize();

    /// Raw samples currently buffered across all level frontiers
    /// (space instrumentation).
    std::int64_t live_values() const;
    std::int64_t peak_live_values() const { return peak_live_; }

  private:
    struct Level {
        std::vector<double> head;    // first 2q-2 samples (wrap closure)
        std::deque<double> window;   // pending samples from position start
        std::int64_t start = 0;      // absolute index of window.front()
        std::int64_t received = 0;
        std::int64_t next_t = 0;     // next output shift to produce
    };

    void feed(int level, double value);
    void flush_wrapped(int level);

    std::int64_t n_;
    FilterBank fb_;
    std::vector<double> h_, g_;  // scaled per the requested tag
    Emit emit_;
    std::vector<Level> levels_;
    int num_levels_;  // log2 n
    std::int64_t pushed_ = 0;
    std::int64_t peak_live_ = 0;
    bool finalized_ = false;
};

}  // namespace wavesyn

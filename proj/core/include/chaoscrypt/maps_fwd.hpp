#pragma once

namespace chaoscrypt {

/// A point of the 2-D chaotic system.
struct State {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const State&, const State&) = default;
};

}  // namespace chaoscrypt

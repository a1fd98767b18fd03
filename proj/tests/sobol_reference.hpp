// Reference Sobol points (unscrambled Joe-Kuo sequence, zero point skipped),
// frozen from an independent published-direction-number generator.
#pragma once

namespace ref {
inline constexpr int kSobolRefD = 5;
inline constexpr int kSobolRefN = 16;
inline constexpr double kSobolRef[16][5] = {
    {0.5, 0.5, 0.5, 0.5, 0.5},
    {0.75, 0.25, 0.25, 0.25, 0.75},
    {0.25, 0.75, 0.75, 0.75, 0.25},
    {0.375, 0.375, 0.625, 0.875, 0.375},
    {0.875, 0.875, 0.125, 0.375, 0.875},
    {0.625, 0.125, 0.875, 0.625, 0.625},
    {0.125, 0.625, 0.375, 0.125, 0.125},
    {0.1875, 0.3125, 0.9375, 0.4375, 0.5625},
    {0.6875, 0.8125, 0.4375, 0.9375, 0.0625},
    {0.9375, 0.0625, 0.6875, 0.1875, 0.3125},
    {0.4375, 0.5625, 0.1875, 0.6875, 0.8125},
    {0.3125, 0.1875, 0.3125, 0.5625, 0.9375},
    {0.8125, 0.6875, 0.8125, 0.0625, 0.4375},
    {0.5625, 0.4375, 0.0625, 0.8125, 0.1875},
    {0.0625, 0.9375, 0.5625, 0.3125, 0.6875},
    {0.09375, 0.46875, 0.46875, 0.65625, 0.28125},
};
inline constexpr double kSobolRefD50Row32[50] = {
    0.046875, 0.265625, 0.703125, 0.546875, 0.140625, 0.921875, 0.796875, 0.671875,
    0.984375, 0.046875, 0.390625, 0.953125, 0.453125, 0.984375, 0.984375, 0.109375,
    0.171875, 0.046875, 0.421875, 0.515625, 0.328125, 0.703125, 0.421875, 0.765625,
    0.171875, 0.234375, 0.171875, 0.265625, 0.140625, 0.734375, 0.734375, 0.515625,
    0.984375, 0.234375, 0.984375, 0.609375, 0.765625, 0.796875, 0.078125, 0.453125,
    0.453125, 0.515625, 0.703125, 0.703125, 0.796875, 0.546875, 0.359375, 0.890625,
    0.140625, 0.078125,
};
}  // namespace ref

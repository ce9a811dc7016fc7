#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bootlab/hetero.hpp"
#include "bootlab/initializers.hpp"

namespace bootlab {

enum class BlockingVariant { Even, Four };

// Smallest-area rectangle inside `region` that contains `origin` and satisfies
// the variant's side conditions on the initial states; ties go to the
// lexicographically smallest (a1,b1,a2,b2).
std::optional<Rect> detect_blocking(const HeteroGrid& g0, const Rect& region, BlockingVariant variant, Site origin);
std::optional<Rect> detect_blocking(const HeteroGrid& g0, const Rect& region, BlockingVariant variant);

bool is_protected_rect(const HeteroGrid& g0, const Rect& r);

struct SiteMasks {
    BoxGeometry geometry;
    std::vector<std::uint8_t> green, red, zero;
};

SiteMasks green_red_masks(const HeteroGrid& g0);

enum class CircuitMode { GreenConnection, RedTCircuit };

bool circuit_or_connection(const SiteMasks& masks, CircuitMode mode, const Rect& box, Site origin);
bool circuit_or_connection(const SiteMasks& masks, CircuitMode mode, const Rect& box);

enum class BoxLabel { Neither, Good, VeryGood };

struct BoxTiling {
    int boxesX = 0, boxesY = 0;
    int boxSize = 0;
    std::vector<BoxLabel> labels;  // boxesX * boxesY, row-major from the south-west
    int excludedColumns = 0;       // sites per row not covered by whole boxes
    int excludedRows = 0;
};

BoxTiling good_boxes(const ClassificationGrid& c, int N);

// Rescaling box side for given n and ell.
int box_scale(double n, int ell);

}  // namespace bootlab

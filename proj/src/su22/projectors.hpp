#pragma once

#include "core/graded.hpp"

namespace su22 {

// Orthonormal basis of a projected subspace together with the graded space it
// spans. Columns of `vectors` are the basis vectors in source coordinates.
struct Projector {
    GradedSpace source;
    GradedSpace image;
    Mat vectors;  // source.dim x image.dim

    GradedOperator as_operator() const;  // sum |v_i><v_i| on source
    GradedOperator compress() const;     // image <- source, rows <v_i|
    GradedOperator expand() const;       // source <- image, columns |v_i>
    GradedOperator complement() const;   // id - as_operator()
    double orthonormality_residual() const;
    int rank() const { return image.dim; }
};

// The four projector families. p8/p8bar live on V(x)V; p20 lives on
// Vbar(x)V with Vbar the image of p8; p20t lives on Vbarp(x)V with Vbarp the
// image of p8bar. Image parities: four even + four odd for the 8-dimensional
// ones, ten even + ten odd for the 20-dimensional ones.
struct ProjectorSet {
    Projector p8, p8bar, p20, p20t;
    GradedSpace v;      // fundamental
    GradedSpace vbar;   // 8-dim
    GradedSpace vbarp;  // 8-dim
    GradedSpace vtil;   // 20-dim
    GradedSpace vtilp;  // 20-dim
};

ProjectorSet build_projectors();

}  // namespace su22

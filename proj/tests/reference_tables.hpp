// Copyright 2026 The QSV Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference tables for the Bell, GHZ3 and W3 protocols, kept as
// exact integer numerators over a common denominator. Row order is the
// setting enumeration XX..ZZ / XXX..ZZZ with qubit 0 slowest; column order
// is the outcome enumeration ++.. with qubit 0 slowest.

#pragma once

#include <array>
#include <cstddef>

#include "qsv/pauli.hpp"

namespace qsv::testing {

struct ReferenceTable {
  int n;
  double denominator;
  std::vector<std::array<int, 8>> rows;  // first 2^n entries of each row used

  QuasiProbTable table() const {
    QuasiProbTable t = QuasiProbTable::zeros(n);
    for (std::size_t s = 0; s < rows.size(); ++s)
      for (std::size_t o = 0; o < t.num_outcomes(); ++o)
        t.value(s, o) = static_cast<double>(rows[s][o]) / denominator;
    return t;
  }
};

// p(Phi+), denominator 36.
inline ReferenceTable bell_target_table() {
  return {2,
          36.0,
          {{10, -8, -8, 10},
           {1, 1, 1, 1},
           {1, 1, 1, 1},
           {1, 1, 1, 1},
           {-8, 10, 10, -8},
           {1, 1, 1, 1},
           {1, 1, 1, 1},
           {1, 1, 1, 1},
           {10, -8, -8, 10}}};
}

// p(Omega_Hom(Phi+)) at nu = 1/3, denominator 12.
inline ReferenceTable bell_homogeneous_table() {
  return {2,
          12.0,
          {{2, 0, 0, 2},
           {1, 1, 1, 1},
           {1, 1, 1, 1},
           {1, 1, 1, 1},
           {0, 2, 2, 0},
           {1, 1, 1, 1},
           {1, 1, 1, 1},
           {1, 1, 1, 1},
           {2, 0, 0, 2}}};
}

// p(Omega'_Hom(Phi+)) after revision, denominator 3.
inline ReferenceTable bell_revised_table() {
  return {2,
          3.0,
          {{1, 0, 0, 1},
           {0, 0, 0, 0},
           {0, 0, 0, 0},
           {0, 0, 0, 0},
           {0, 1, 1, 0},
           {0, 0, 0, 0},
           {0, 0, 0, 0},
           {0, 0, 0, 0},
           {1, 0, 0, 1}}};
}

// Revised GHZ3 table at nu' = 3/5, denominator 20.
inline ReferenceTable ghz3_revised_table() {
  return {3, 20.0, {
      {3, 0, 0, 3, 0, 3, 3, 0},  // XXX
      {0, 0, 0, 0, 0, 0, 0, 0},  // XXY
      {0, 0, 0, 0, 0, 0, 0, 0},  // XXZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // XYX
      {0, 3, 3, 0, 3, 0, 0, 3},  // XYY
      {0, 0, 0, 0, 0, 0, 0, 0},  // XYZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // XZX
      {0, 0, 0, 0, 0, 0, 0, 0},  // XZY
      {1, 0, 0, 1, 1, 0, 0, 1},  // XZZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // YXX
      {0, 3, 3, 0, 3, 0, 0, 3},  // YXY
      {0, 0, 0, 0, 0, 0, 0, 0},  // YXZ
      {0, 3, 3, 0, 3, 0, 0, 3},  // YYX
      {0, 0, 0, 0, 0, 0, 0, 0},  // YYY
      {0, 0, 0, 0, 0, 0, 0, 0},  // YYZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // YZX
      {0, 0, 0, 0, 0, 0, 0, 0},  // YZY
      {1, 0, 0, 1, 1, 0, 0, 1},  // YZZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // ZXX
      {0, 0, 0, 0, 0, 0, 0, 0},  // ZXY
      {1, 0, 1, 0, 0, 1, 0, 1},  // ZXZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // ZYX
      {0, 0, 0, 0, 0, 0, 0, 0},  // ZYY
      {1, 0, 1, 0, 0, 1, 0, 1},  // ZYZ
      {1, 1, 0, 0, 0, 0, 1, 1},  // ZZX
      {1, 1, 0, 0, 0, 0, 1, 1},  // ZZY
      {2, 0, 0, 0, 0, 0, 0, 2},  // ZZZ
  }};
}

// Revised W3 table under the symmetric transformation, denominator 222.
inline ReferenceTable w3_revised_table() {
  return {3, 222.0, {
      {12, 0, 0, 0, 0, 0, 0, 12},   // XXX
      {6, 6, 0, 0, 0, 0, 6, 6},     // XXY
      {24, 5, 0, 17, 0, 17, 24, 5}, // XXZ
      {6, 0, 6, 0, 0, 6, 0, 6},     // XYX
      {6, 0, 0, 6, 6, 0, 0, 6},     // XYY
      {1, 0, 1, 0, 1, 0, 1, 0},     // XYZ
      {24, 0, 5, 17, 0, 24, 17, 5}, // XZX
      {1, 1, 0, 0, 1, 1, 0, 0},     // XZY
      {2, 4, 4, 0, 2, 4, 4, 0},     // XZZ
      {6, 0, 0, 6, 6, 0, 0, 6},     // YXX
      {6, 0, 6, 0, 0, 6, 0, 6},     // YXY
      {1, 0, 1, 0, 1, 0, 1, 0},     // YXZ
      {6, 6, 0, 0, 0, 0, 6, 6},     // YYX
      {12, 0, 0, 0, 0, 0, 0, 12},   // YYY
      {24, 5, 0, 17, 0, 17, 24, 5}, // YYZ
      {1, 1, 0, 0, 1, 1, 0, 0},     // YZX
      {24, 0, 5, 17, 0, 24, 17, 5}, // YZY
      {2, 4, 4, 0, 2, 4, 4, 0},     // YZZ
      {24, 0, 0, 24, 5, 17, 17, 5}, // ZXX
      {1, 1, 1, 1, 0, 0, 0, 0},     // ZXY
      {2, 4, 2, 4, 4, 0, 4, 0},     // ZXZ
      {1, 1, 1, 1, 0, 0, 0, 0},     // ZYX
      {24, 0, 0, 24, 5, 17, 17, 5}, // ZYY
      {2, 4, 2, 4, 4, 0, 4, 0},     // ZYZ
      {2, 2, 4, 4, 4, 4, 0, 0},     // ZZX
      {2, 2, 4, 4, 4, 4, 0, 0},     // ZZY
      {0, 32, 32, 4, 32, 4, 4, 24}, // ZZZ
  }};
}

// W3 table under t0 = (0,0,0,0,1,1) after revision, denominator 12; its
// completeness is 7/6.
inline ReferenceTable w3_t001_table() {
  return {3, 12.0, {
      {0, 0, 0, 0, 0, 0, 0, 0},  // XXX
      {0, 0, 0, 0, 0, 0, 0, 0},  // XXY
      {2, 1, 0, 1, 0, 1, 2, 1},  // XXZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // XYX
      {0, 0, 0, 0, 0, 0, 0, 0},  // XYY
      {0, 0, 0, 0, 0, 0, 0, 0},  // XYZ
      {2, 0, 1, 1, 0, 2, 1, 1},  // XZX
      {0, 0, 0, 0, 0, 0, 0, 0},  // XZY
      {0, 0, 0, 0, 0, 0, 0, 0},  // XZZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // YXX
      {0, 0, 0, 0, 0, 0, 0, 0},  // YXY
      {0, 0, 0, 0, 0, 0, 0, 0},  // YXZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // YYX
      {0, 0, 0, 0, 0, 0, 0, 0},  // YYY
      {2, 1, 0, 1, 0, 1, 2, 1},  // YYZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // YZX
      {2, 0, 1, 1, 0, 2, 1, 1},  // YZY
      {0, 0, 0, 0, 0, 0, 0, 0},  // YZZ
      {2, 0, 0, 2, 1, 1, 1, 1},  // ZXX
      {0, 0, 0, 0, 0, 0, 0, 0},  // ZXY
      {0, 0, 0, 0, 0, 0, 0, 0},  // ZXZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // ZYX
      {2, 0, 0, 2, 1, 1, 1, 1},  // ZYY
      {0, 0, 0, 0, 0, 0, 0, 0},  // ZYZ
      {0, 0, 0, 0, 0, 0, 0, 0},  // ZZX
      {0, 0, 0, 0, 0, 0, 0, 0},  // ZZY
      {0, 2, 2, 0, 2, 0, 0, 0},  // ZZZ
  }};
}

// The reference inhomogeneous W3 operator Omega'(W3), entries over 13.
inline Matrix w3_inhomogeneous_operator() {
  static const int kEntries[8][8] = {
      {9, 0, 0, 0, 0, 0, 0, 0},
      {0, 11, 1, 0, 1, 0, 0, 0},
      {0, 1, 11, 0, 1, 0, 0, 0},
      {0, 0, 0, 9, 0, 0, 0, 0},
      {0, 1, 1, 0, 11, 0, 0, 0},
      {0, 0, 0, 0, 0, 9, 0, 0},
      {0, 0, 0, 0, 0, 0, 9, 0},
      {0, 0, 0, 0, 0, 0, 0, 6},
  };
  Matrix m(8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      m(r, c) = static_cast<double>(kEntries[r][c]) / 13.0;
  return m;
}

}  // namespace qsv::testing

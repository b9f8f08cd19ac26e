#pragma once

// Inline presentations shared across the test suites.

namespace fixtures {

// k[x]/x^2: one vertex, one loop, x^2 = 0.
inline const char* loop2 = R"(
field p=101
vertices v
arrow x: v -> v
relation x*x
nilpotency 2
)";

// Exterior algebra on two generators.
inline const char* ext2 = R"(
field p=101
vertices v
arrow x: v -> v
arrow y: v -> v
relation x*x
relation y*y
relation x*y + y*x
nilpotency 3
)";

// Exterior algebra on three generators (the Figure 3 local algebra).
inline const char* ext3 = R"(
field p=101
vertices v
arrow x: v -> v
arrow y: v -> v
arrow z: v -> v
relation x*x
relation y*y
relation z*z
relation x*y + y*x
relation x*z + z*x
relation y*z + z*y
nilpotency 4
)";

// Path algebra of 1 -> 2 (arrow a), hereditary.
inline const char* a2 = R"(
field p=101
vertices 1 2
arrow a: 1 -> 2
nilpotency 2
)";

// Path algebra of 1 -> 2 -> 3, hereditary.
inline const char* a3 = R"(
field p=101
vertices 1 2 3
arrow a: 1 -> 2
arrow b: 2 -> 3
nilpotency 3
)";

// Nakayama kQ/J^2 on the 2-cycle.
inline const char* nakayama2 = R"(
field p=101
vertices 1 2
arrow a: 1 -> 2
arrow b: 2 -> 1
relation b*a
relation a*b
nilpotency 2
)";

// k[x]/x^3.
inline const char* kx3 = R"(
field p=101
vertices v
arrow x: v -> v
relation x*x*x
nilpotency 3
)";

} // namespace fixtures

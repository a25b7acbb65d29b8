#include "consec/reference_data.hpp"

namespace consec::tables {

const std::array<uint64_t, 11> kNoTripleRun = {3, 5, 7, 9, 13, 25, 29, 61, 81, 121, 169};

const std::array<PipelineRow, 13> kPipelineRows = {{
    {1, 256, 7, 7, 3, 1},
    {2, 16384, 2425, 805, 164, 8},
    {3, 802816, 172827, 21350, 4785, 26},
    {4, 31719424, 5459954, 149265, 33357, 106},
    {5, 368212715, 30738304, 695172, 159618, 236},
    {6, 9777432663, 278578984, 1680653, 380984, 405},
    {7, 48913046416, 262182675, 2131439, 478146, 353},
    {8, 327363505978, 218209768, 2162062, 476569, 203},
    {9, 6245429709655, 479005331, 897028, 194276, 63},
    {10, 22053999260750, 68795792, 262534, 55943, 9},
    {11, 117121857096884, 9250747, 93920, 19315, 1},
    {12, 1307042588523590, 2378985, 6566, 1294, 0},
    {13, 3489135957826319, 11547, 964, 187, 0},
}};

const std::array<OmegaBoundRow, 8> kOmegaBoundRows = {{
    {3, 13, 3.49, 15},
    {4, 23, 3.29, 32},
    {5, 37, 4.22, 61},
    {6, 59, 4.61, 113},
    {7, 100, 3.75, 220},
    {8, 171, 2.27, 425},
    {9, 301, 1.01, 836},
    {10, 533, 6.69, 1638},
}};

const std::vector<uint64_t>& no_quad_run() {
  static const std::vector<uint64_t> v = {
      5,   7,   11,  13,  17,  19,  23,  25,  29,  31,
      41,  43,  61,  67,  71,  73,  79,  113, 121, 169,
      181, 199, 337, 361, 397, 529, 571, 1093, 1381, 2401};
  return v;
}

const std::vector<uint64_t>& no_quint_run() {
  static const std::vector<uint64_t> v = {
      5,     7,     11,    13,    17,    19,    23,    25,    29,    31,
      37,    41,    43,    47,    49,    61,    67,    71,    73,    79,
      101,   109,   113,   121,   125,   127,   131,   139,   151,   157,
      163,   169,   181,   193,   199,   211,   229,   241,   271,   277,
      281,   289,   307,   313,   331,   337,   361,   379,   397,   433,
      439,   461,   463,   529,   547,   571,   577,   601,   613,   625,
      631,   691,   751,   757,   841,   961,   1009,  1021,  1033,  1051,
      1093,  1201,  1297,  1321,  1381,  1453,  1471,  1489,  1531,  1597,
      1621,  1723,  1741,  1831,  1849,  1861,  1933,  2017,  2161,  2221,
      2311,  2341,  2401,  3061,  3481,  3541,  3571,  3721,  4201,  4561,
      4789,  4831,  5041,  5281,  5881,  7921,  8821,  9091,  9241,  12769,
      15625};
  return v;
}

}  // namespace consec::tables

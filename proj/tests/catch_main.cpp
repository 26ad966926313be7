// Catch2 amalgamated translation unit (provides main).
#include <catch2/catch_amalgamated.cpp>

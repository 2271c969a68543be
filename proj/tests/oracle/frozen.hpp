#pragma once
// Values produced by the binary128 oracle (oracle::s_alpha) and frozen here.

#include <map>

namespace frozen {

inline const std::map<int, const char*> s_alpha = {
    {4, "1.41421356237309504880"},  {6, "1.40936478988530990660"},  {8, "1.36158809338402407360"},
    {10, "1.31810524704379732732"}, {12, "1.28279009852566595320"}, {14, "1.25437078415963506905"},
};

}  // namespace frozen

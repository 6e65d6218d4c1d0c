#pragma once
// Shared coefficient tables for the Fresnel kernels. Both kernels must use
// exactly these tables and the same operation order so that scalar and SIMD
// results agree bitwise.

#include <cstddef>

namespace fresnel2d::detail {

// Split point between the Taylor series and the auxiliary-function tail.
inline constexpr double kSeriesCut = 1.6;

// Taylor series in z = w^4:  C(w) = w * sum c[k] z^k,  S(w) = w^3 * sum s[k] z^k.
inline constexpr std::size_t kSeriesTerms = 17;
inline constexpr double kSeriesC[kSeriesTerms] = {
    1.00000000000000000e+00, -2.46740110027233978e-01, 2.81855008778942248e-02,
    -1.60488313564253549e-03, 5.40741338140839160e-05, -1.20009725586002882e-06,
    1.88434991152726863e-08, -2.20227692544546630e-10, 1.98968579241802189e-12,
    -1.43091897317151983e-14, 8.38472970511855409e-17, -4.07998144923387789e-19,
    1.67484761262151835e-21, -5.87789611803689199e-24, 1.78377831034375125e-26,
    -4.72722638474268125e-29, 1.10344568635232950e-31};
inline constexpr double kSeriesS[kSeriesTerms] = {
    5.23598775598298927e-01, -9.22805853580351831e-02, 7.24478420419700370e-03,
    -3.12116942354579222e-04, 8.44427288354525436e-06, -1.56471445009221090e-07,
    2.10821219332145456e-09, -2.15743068058434439e-11, 1.73341020888748457e-13,
    -1.12232447879839548e-15, 5.98005323921040462e-18, -2.66787136284139924e-20,
    1.01106964246672200e-22, -3.29527147790706804e-25, 9.33438268902099316e-28,
    -2.31928366772137774e-30, 5.09560144781068939e-33};

// Tail (|w| > 1.6): with u = (1.6/w)^4 and s = 2u - 1,
//   f(w) = Cheb(kChebF, s) / (pi w),   g(w) = Cheb(kChebG, s) / (pi^2 w^3),
//   C = 0.5 + f sin(pi w^2/2) - g cos(pi w^2/2),
//   S = 0.5 - g sin(pi w^2/2) - f cos(pi w^2/2).
inline constexpr std::size_t kChebTerms = 28;
inline constexpr double kChebF[kChebTerms] = {
    9.81897388025641860e-01, -1.68157617388866136e-02, 1.11111011319568785e-03,
    -1.41948458687530887e-04, 2.57338846263212476e-05, -5.82518219954128714e-06,
    1.54076036552192459e-06, -4.57874879684405401e-07, 1.49054941848284655e-07,
    -5.22362286106613014e-08, 1.94613032626940125e-08, -7.63606558470237727e-09,
    3.13274085205647227e-09, -1.33615945712599006e-09, 5.89760835419439131e-10,
    -2.68376112864522427e-10, 1.25517480576470482e-10, -6.01749013733035499e-11,
    2.95055030481155892e-11, -1.47682457038429484e-11, 7.53269904051241877e-12,
    -3.90921783063961577e-12, 2.06073936895351087e-12, -1.10094143315512698e-12,
    5.93323821739528500e-13, -3.18741572544980916e-13, 1.64267848224611620e-13,
    -6.97352624004006363e-14};
inline constexpr double kChebG[kChebTerms] = {
    9.22142671602049213e-01, -6.90621476305256082e-02, 7.23889027153707190e-03,
    -1.19966770166214545e-03, 2.59653991879457951e-04, -6.71435849791303662e-05,
    1.97477528015750975e-05, -6.40863458748247096e-06, 2.24903372282040786e-06,
    -8.41511360213372820e-07, 3.32238266807567855e-07, -1.37324349152838190e-07,
    5.90597767441678059e-08, -2.63003934276069811e-08, 1.20792030309365222e-08,
    -5.70297127784920480e-09, 2.76035451955288381e-09, -1.36655019166590228e-09,
    6.90595230255370531e-10, -3.55641360865822338e-10, 1.86348828366297473e-10,
    -9.92061170377857268e-11, 5.35744582471480708e-11, -2.92799751921483627e-11,
    1.61166621697919688e-11, -8.82168188039477573e-12, 4.61707782704159556e-12,
    -1.97972039001625332e-12};

// sin(pi/2 u) = u * poly(kSinP, u^2), cos(pi/2 u) = poly(kCosP, u^2) for
// |u| <= 0.5 (Taylor in pi/2-weighted form).
inline constexpr std::size_t kTrigTerms = 8;
inline constexpr double kSinP[kTrigTerms] = {
    1.57079632679489656e+00,  -6.45964097506246282e-01, 7.96926262461670476e-02,
    -4.68175413531868832e-03, 1.60441184787359829e-04,  -3.59884323521208518e-06,
    5.69217292196792668e-08,  -6.68803510981146768e-10};
inline constexpr double kCosP[kTrigTerms] = {
    1.00000000000000000e+00,  -1.23370055013616975e+00, 2.53669507901048030e-01,
    -2.08634807633529609e-02, 9.19260274839426585e-04,  -2.52020423730606066e-05,
    4.71087477881817174e-07,  -6.38660308379185209e-09};

// Inputs beyond this magnitude are clamped to the +/-0.5 limit (f and g are
// below 1e-100 there).
inline constexpr double kHugeCut = 1e100;

} // namespace fresnel2d::detail

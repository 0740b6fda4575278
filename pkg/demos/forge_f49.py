"""
Forging a non-GRS MDS code over F_49
====================================

Start from a Reed-Solomon code over F_7, read off its systematic block,
lift it to F_49 and nudge one entry by an element outside F_7.
"""

from mdsforge import Field, LinearCode, Mat, certify, cauchy_fit, grs_generator, systematic_form
from mdsforge.codes import square_dim
from mdsforge.grs import INF, FitFailure, GrsParams

# F_49 = F_7[x]/(x^2 + 2); elements print as a+bx
F = Field.parse("7^2/2,0,1")
print(F, "theta =", F.theta, " theta^2 =", F.theta ** 2)

# RS_3 on the projective line over F_7: points inf, 0, 1, ..., 6
params = GrsParams.rs((INF, *(F(i) for i in range(7))), 3)
rs = grs_generator(params)
print("\nRS generator:")
print(rs.gen.to_text())

perm, A = systematic_form(rs, [0, 1, 2])
print("\nsystematic block A (entries in F_7):")
print(A.to_text())

# every GRS systematic block is a Cauchy-like matrix; recover its parameters
fit = cauchy_fit(A)
view = fit.normal_form_view()
print("\nCauchy normal form of A:")
for key in ("c", "d", "x", "y"):
    print(f"  {key} = {[str(e) for e in view[key]]}")

# the perturbation: D = A + theta * E_11
rows = A.values()
rows[0][0] = F.add(rows[0][0], F.theta.value)
D = Mat.from_values(F, rows, A.ncols)
print("\nD:")
print(D.to_text())

code = LinearCode(Mat.hstack(Mat.identity(F, 3), D))
cert = certify(code)
print("\n" + cert.summary())
print("minimum distance by enumeration:", cert.mds.get("distance"))
print("dim C^2 =", square_dim(code), "while every GRS [8,3] code has 5")

try:
    cauchy_fit(D)
except FitFailure as exc:
    print("D has no Cauchy normal form:", exc)

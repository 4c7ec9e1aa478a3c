"""Row types of Fourier matrices, stored exactly as phase exponents."""
from fkpequiv import build, census_oracle, fourier, kron, row_phase_order

# F_4 as exponents of exp(2*pi*i/4); row 1 runs through all four phases
f4 = fourier(4)
print(f4.exponents)
print("phase order of each row:", [row_phase_order(f4, i) for i in range(4)])

# F_8 has 1 row of order 1, then (a-1)*a**(r-1) rows of order 2**r
print("census of F_8:", census_oracle(fourier(8)))

# two different FKPs of size 4
print("F_2 x F_2:", census_oracle(kron(fourier(2), fourier(2))))
print("F_4:      ", census_oracle(fourier(4)))

# coprime factors: orders multiply
print("F_2 x F_3:", census_oracle(build([2, 3])))
print("F_6:      ", census_oracle(fourier(6)))

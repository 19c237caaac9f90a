"""
Periodic points and their indices
=================================

Every point of period k over n symbols is stored as its block, and the
block read in base n gives its index in Per_k.
"""

from stabaut import PeriodicPoint, enumerate_periodic, point_distance

# all points of period 3 over two symbols, in index order
for x in enumerate_periodic(2, 3):
    print(x.index, x.to_string(), "minimal period", x.minimal_period)

# equality ignores the declared period
x = PeriodicPoint.from_string(2, "0101")
print(x == PeriodicPoint.from_string(2, "01"), x.period, x.minimal_period)

# shifting and reflecting
y = PeriodicPoint.from_string(2, "0010111")
print("shift by 2:", y.shift(2).to_string())
print("reflection:", y.reflect().to_string())

# distance 2^-r where r is the first disagreement from the origin
print(point_distance(PeriodicPoint.from_string(2, "01"), PeriodicPoint.from_string(2, "0110")))

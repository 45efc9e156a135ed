"""Small bundled datasets used by the examples and experiments."""

# Annual butterfat production (pounds) for 20 cows, a classic textbook
# sample.  Mean 507.5, median 507.5, MAD 58.5.
BUTTERFAT = (
    481.0, 537.0, 513.0, 583.0, 453.0, 510.0, 570.0, 500.0, 457.0, 555.0,
    618.0, 327.0, 350.0, 643.0, 499.0, 421.0, 505.0, 637.0, 599.0, 392.0,
)

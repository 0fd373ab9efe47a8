"""Random-graph clustering and path-length baselines for published lexical
network sizes, next to the published baseline values."""

from netlang.metrics import random_baselines

# name, N, <k>, published L_random, published C_random
NETWORKS = [
    ("thesaurus synonymy", 30_244, 60, 2.5, 0.002),
    ("WordNet all words", 122_005, 1.6, 10.61, 0.0001),
    ("BNC collocation restricted", 460_902, 70, 3.06, 1.55e-4),
    ("BNC collocation unrestricted", 478_773, 74, 3.03, 1.55e-4),
    ("Czech syntactic", 33_336, 13.4, 4, 4e-4),
    ("German syntactic", 6_789, 4.6, 5.7, 6e-4),
    ("Romanian syntactic", 5_563, 5.1, 5.2, 9.2e-4),
]


def main():
    print("network,n,mean_degree,c_random,c_random_published,l_random,l_random_published")
    for name, n, k, l_pub, c_pub in NETWORKS:
        c, l = random_baselines(n, k)
        print(f"{name},{n},{k:g},{c:.4g},{c_pub:g},{l:.4g},{l_pub:g}")


if __name__ == "__main__":
    main()

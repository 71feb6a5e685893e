from treechains.example1 import N_COARSE, N_FINE, check_example1, example1_table


class TestTable:
    def test_totality(self):
        table = example1_table()
        assert sorted(table) == list(range(1, N_FINE + 1))

    def test_spot_values(self):
        table = example1_table()
        assert table[33] == 12
        assert table[1] == 13
        assert table[38] == 7
        assert table[82] == 7
        assert table[100] == 4
        assert table[131] == 1

    def test_report(self):
        report = check_example1()
        assert report["pass"]
        assert report["domain_size"] == 131
        assert report["image"] == list(range(1, N_COARSE + 1))
        assert report["unused_targets"] == []
        assert report["block_sizes"] == [32, 5, 45, 1, 14, 5, 29]
        assert report["block_sum"] == 131
        assert report["usage"][7] == 45
        assert report["usage"][13] == 32

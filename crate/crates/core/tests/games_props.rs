use chromatic::fixtures::{buchi_ab, buchi_ab_skeleton};
use chromatic::games::{
    brute_force_regions, product_game, random_arena, random_game, solve_parity, strategy_project, verify_strategy,
    Player,
};
use chromatic::synthesis::{synthesize, SynthesisOptions};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solver_matches_brute_force(seed in any::<u64>(), stream in 0u64..1000) {
        let g = random_game(seed, stream, 6, 3).unwrap();
        let sol = solve_parity(&g);
        let brute = brute_force_regions(&g).unwrap();
        prop_assert!(brute.is_partition(), "brute force found a state won by both or neither");
        for v in 0..g.num_states() {
            prop_assert_eq!(brute.p1[v], sol.winner[v] == Player::P1, "state {}", v);
        }
    }

    #[test]
    fn flipping_parity_swaps_regions(seed in any::<u64>()) {
        let g = random_game(seed, 0, 8, 4).unwrap();
        let sol = solve_parity(&g);
        let flipped = solve_parity(&g.flip_parity());
        for v in 0..g.num_states() {
            prop_assert_eq!(flipped.winner[v], sol.winner[v].opponent());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projected_strategies_win_their_regions(seed in any::<u64>()) {
        let d = synthesize(&buchi_ab(), &buchi_ab_skeleton(), &SynthesisOptions::default()).unwrap().automaton;
        let a = random_arena(seed, 0, 6, d.skeleton().alphabet()).unwrap();
        let pg = product_game(&a, &d).unwrap();
        let sol = solve_parity(&pg.game);
        for p in [Player::P1, Player::P2] {
            let s = strategy_project(&a, &pg, d.skeleton(), &sol.strategy, p).unwrap();
            let r = verify_strategy(&a, &d, &s, p).unwrap();
            prop_assert!(r.passed(), "{p}: {:?}", r.witness);
            prop_assert_eq!(r.winnable, sol.region(p).len());
        }
    }
}

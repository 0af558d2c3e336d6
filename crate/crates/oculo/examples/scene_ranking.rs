//! Rank externally tallied per-scene counts: the fifteen VR-video scenes
//! with their fixation/saccade totals, ranked both ways.
//!
//! ```bash
//! cargo run --example scene_ranking
//! ```

use oculo::scenes::{rank_scenes, RankKey, SceneStats};

fn main() {
    let rows = [
        ("Эгль", 856, 42, 0),
        ("Аванш", 862, 50, 1),
        ("Шато-д'О", 785, 22, 0),
        ("Жура Водуа (Шассерон)", 560, 36, 0),
        ("Лозанна (Собор)", 1435, 70, 1),
        ("Лозанна (Уши)", 1462, 56, 0),
        ("Лаво-ЮНЕСКО", 1187, 50, 0),
        ("Ле Дьяблере (Ледник 3000)", 2105, 154, 3),
        ("Лейзин (Куклос)", 1125, 52, 5),
        ("Монтре (Шильонский замок)", 508, 28, 0),
        ("Монтрё (Рош-де-Нэ)", 1776, 106, 1),
        ("Морж", 760, 48, 0),
        ("Ньон", 609, 57, 0),
        ("Вали де Жу", 689, 46, 0),
        ("Ивердон-ле-Бен", 496, 41, 0),
    ];
    let stats: Vec<SceneStats> = rows
        .iter()
        .map(|(name, f, s, u)| SceneStats::from_counts(name, *f, *s, *u))
        .collect();

    let count_for = |name: &str, key: RankKey| -> usize {
        let s = stats.iter().find(|s| s.scene_name == name).unwrap();
        match key {
            RankKey::FixationCount => s.fixation_count,
            RankKey::SaccadeCount => s.saccade_count,
            RankKey::StdArea => 0,
        }
    };

    println!("most fixated scenes:");
    for (i, name) in rank_scenes(&stats, RankKey::FixationCount)
        .iter()
        .enumerate()
    {
        println!(
            "  {:>2}. {:<28} {:>5}",
            i + 1,
            name,
            count_for(name, RankKey::FixationCount)
        );
    }

    println!("\nmost saccade-active scenes:");
    for (i, name) in rank_scenes(&stats, RankKey::SaccadeCount)
        .iter()
        .take(5)
        .enumerate()
    {
        println!(
            "  {:>2}. {:<28} {:>5}",
            i + 1,
            name,
            count_for(name, RankKey::SaccadeCount)
        );
    }
}

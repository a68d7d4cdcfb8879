//! Ranks the closest support services of each type around a location.
//!
//! cargo run --example nearest_services -- 23.81 90.41

use homeguard::dispatch::{nearest_services, GeoPoint, ServiceDirectory};
use homeguard::triage::{CrimeTaxonomy, ServiceType};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let at = match args[..] {
        [lat, lon, ..] => GeoPoint::new(lat, lon)?,
        _ => GeoPoint::new(23.7808, 90.4000)?,
    };
    let directory = ServiceDirectory::from_graph(CrimeTaxonomy::shipped()?.graph())?;
    println!("{} services in the directory; query point {:.4}, {:.4}", directory.len(), at.lat, at.lon);
    for ty in ServiceType::ALL {
        println!("\n{ty}");
        for r in nearest_services(&directory, ty, at, 2)? {
            println!("  {:>6.2} km  {}  {}", r.distance_km.unwrap_or_default(), r.service.name, r.service.phone);
        }
    }
    Ok(())
}

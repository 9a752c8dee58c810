from database import SessionLocal, engine
import models
import json

# Asegurar que las tablas existan
models.Base.metadata.create_all(bind=engine)

def ver_ejecuciones(limite: int = 5):
    db = SessionLocal()
    try:
        runs = db.query(models.ScenarioRun).order_by(models.ScenarioRun.id.desc()).all()

        print(f"\n📊 Total de ejecuciones registradas: {len(runs)}")

        for run in runs[:limite]:
            estado = "✅" if run.status == "ok" else "❌"
            print(f"\n{estado} ID: {run.id} | {run.scenario} ({run.source}) | Fecha: {run.started_at}")
            print(f"⚙️  Parámetros: {json.dumps(run.parameters, ensure_ascii=False)}")
            print(f"🎯 Precisión: {run.digits} dígitos | ⏱️ {run.duration_ms} ms")
            if run.error:
                print(f"   Error: {run.error}")
            elif run.summary:
                print("📈 Resumen:")
                for clave, valor in run.summary.items():
                    print(f"   {clave}: {json.dumps(valor, ensure_ascii=False)}")
            else:
                print("   (Sin resumen)")
            print("="*50)

    finally:
        db.close()

if __name__ == "__main__":
    ver_ejecuciones()

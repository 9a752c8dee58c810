from sqlalchemy import create_engine
from sqlalchemy.orm import declarative_base
from sqlalchemy.orm import sessionmaker
import os
from dotenv import load_dotenv

load_dotenv()

import json

DATABASE_URL = os.getenv("DATABASE_URL", "sqlite:///./polycond.db")

# SQLite se comparte entre el hilo de la API y los de fondo
connect_args = {"check_same_thread": False} if DATABASE_URL.startswith("sqlite") else {}

# Serializador JSON que conserva acentos y símbolos (ε, Δ) tal cual
engine = create_engine(
    DATABASE_URL,
    connect_args=connect_args,
    json_serializer=lambda obj: json.dumps(obj, ensure_ascii=False)
)
SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)

Base = declarative_base()

def get_db():
    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()
